#pragma once

// Minimal dense/sparse linear-algebra backend shared by all other headers:
// sparse SPD factorizations with pattern reuse, a dense symmetric
// eigensolver for small Gram matrices, and rank decisions.

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>

namespace strb {

using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseSymMatrix = Eigen::SparseMatrix<double>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSpdError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(what);
}

/// Maximal absolute asymmetry |A - A^T|_max; used by invariant checks.
inline double max_abs_asymmetry(const SparseSymMatrix& A) {
  SparseSymMatrix D = SparseSymMatrix(A.transpose()) - A;
  double m = 0.0;
  for (int k = 0; k < D.outerSize(); ++k)
    for (SparseSymMatrix::InnerIterator it(D, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

/// Sparse LDL^T factorization of a symmetric positive definite matrix.
/// The symbolic analysis is kept so the same sparsity pattern can be
/// refactorized cheaply (Newton iterations touch only the diagonal values).
/// solve() is const and safe to call concurrently.
class SpdFactorization {
 public:
  SpdFactorization() = default;

  explicit SpdFactorization(const SparseSymMatrix& A) { compute(A); }

  void compute(const SparseSymMatrix& A) {
    require(A.rows() == A.cols(), "SpdFactorization: matrix not square");
    ldlt_.compute(A);
    n_ = A.rows();
    check_spd();
  }

  /// Run the symbolic analysis only; pair with refactorize().
  void analyze_pattern(const SparseSymMatrix& A) {
    require(A.rows() == A.cols(), "SpdFactorization: matrix not square");
    ldlt_.analyzePattern(A);
    n_ = A.rows();
    analyzed_ = true;
  }

  /// Numeric refactorization for a matrix with the analyzed pattern.
  void refactorize(const SparseSymMatrix& A) {
    require(analyzed_, "SpdFactorization: refactorize before analyze_pattern");
    ldlt_.factorize(A);
    check_spd();
  }

  Vector solve(const Vector& b) const {
    require(b.size() == n_, "SpdFactorization: right-hand side has length " +
                                std::to_string(b.size()) + ", expected " +
                                std::to_string(n_));
    return ldlt_.solve(b);
  }

  DenseMatrix solve(const DenseMatrix& B) const {
    require(B.rows() == n_, "SpdFactorization: block right-hand side mismatch");
    return ldlt_.solve(B);
  }

  Eigen::Index size() const { return n_; }

 private:
  void check_spd() {
    if (ldlt_.info() != Eigen::Success)
      throw NotSpdError("matrix not SPD: factorization failed");
    const auto& d = ldlt_.vectorD();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (!(d(i) > 0.0)) {
        const Eigen::Index orig = ldlt_.permutationPinv().indices()(i);
        throw NotSpdError("matrix not SPD: non-positive pivot at index " +
                          std::to_string(orig));
      }
    }
  }

  Eigen::SimplicialLDLT<SparseSymMatrix> ldlt_;
  Eigen::Index n_ = 0;
  bool analyzed_ = false;
};

inline SpdFactorization spd_factorize(const SparseSymMatrix& A) {
  return SpdFactorization(A);
}

inline Vector spd_solve(const SpdFactorization& f, const Vector& b) {
  return f.solve(b);
}

/// Dense LDL^T with the same SPD contract, for reduced-order systems.
class DenseSpdFactorization {
 public:
  explicit DenseSpdFactorization(const DenseMatrix& A) : ldlt_(A) {
    const auto& d = ldlt_.vectorD();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (!(d(i) > 0.0)) {
        const Eigen::Index orig = ldlt_.transpositionsP().indices()(i);
        throw NotSpdError("matrix not SPD: non-positive pivot at index " +
                          std::to_string(orig));
      }
    }
  }

  Vector solve(const Vector& b) const { return ldlt_.solve(b); }

 private:
  Eigen::LDLT<DenseMatrix> ldlt_;
};

struct SymEig {
  Vector values;        // descending
  DenseMatrix vectors;  // columns match values
};

/// Full eigendecomposition of a small symmetric matrix, eigenvalues sorted
/// descending. Only the lower triangle is referenced. The dimension cap
/// guards against accidentally feeding an FE-sized operator to the dense path.
inline SymEig eig_sym_desc(const DenseMatrix& G, Eigen::Index cap = 2048) {
  require(G.rows() == G.cols(), "eig_sym_desc: matrix not square");
  require(G.rows() <= cap, "eig_sym_desc: dimension " +
                               std::to_string(G.rows()) + " over cap " +
                               std::to_string(cap));
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(G);
  require(es.info() == Eigen::Success, "eig_sym_desc: iteration failed");
  const Eigen::Index n = G.rows();
  SymEig out;
  out.values = es.eigenvalues().reverse();
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    out.vectors.col(j) = es.eigenvectors().col(n - 1 - j);
  return out;
}

/// Count of values exceeding rel_tol * max(values). Input must be
/// nonnegative and sorted descending; returns 0 when the largest value is 0.
inline Eigen::Index numerical_rank(const Vector& values, double rel_tol = 1e-10) {
  if (values.size() == 0) return 0;
  const double vmax = values(0);
  if (!(vmax > 0.0)) return 0;
  Eigen::Index r = 0;
  while (r < values.size() && values(r) > rel_tol * vmax) ++r;
  return r;
}

}  // namespace strb
