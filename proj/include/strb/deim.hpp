#pragma once

// Discrete empirical interpolation: orthonormal approximation modes Phi,
// greedily selected interpolation rows I, and the interpolation operator
// Phi (P^T Phi)^{-1} P^T. Successive updates append modes and rows without
// touching previously selected data.

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "strb/linalg.hpp"
#include "strb/operators.hpp"

namespace strb {

class DeimData {
 public:
  DeimData() = default;

  /// Validates orthonormality of the modes, distinctness of the rows and
  /// invertibility of P^T Phi (smallest singular value above 1e-12).
  DeimData(DenseMatrix modes, std::vector<Eigen::Index> indices)
      : modes_(std::move(modes)), indices_(std::move(indices)) {
    require(static_cast<Eigen::Index>(indices_.size()) == modes_.cols(),
            "DeimData: mode/index count mismatch");
    for (std::size_t i = 0; i < indices_.size(); ++i)
      for (std::size_t j = i + 1; j < indices_.size(); ++j)
        require(indices_[i] != indices_[j], "DeimData: duplicate interpolation index " +
                                                std::to_string(indices_[i]));
    const DenseMatrix gram = modes_.transpose() * modes_ -
                             DenseMatrix::Identity(modes_.cols(), modes_.cols());
    require(size() == 0 || gram.cwiseAbs().maxCoeff() <= 1e-8,
            "DeimData: modes not orthonormal");
    if (size() > 0) {
      const DenseMatrix ptphi = sampled(modes_);
      Eigen::JacobiSVD<DenseMatrix> svd(ptphi);
      smin_ = svd.singularValues()(svd.singularValues().size() - 1);
      require(smin_ > 1e-12, "DeimData: P^T Phi numerically singular");
      lu_.compute(ptphi);
    }
  }

  Eigen::Index size() const { return modes_.cols(); }
  Eigen::Index space_dim() const { return modes_.rows(); }
  const DenseMatrix& modes() const { return modes_; }
  const std::vector<Eigen::Index>& indices() const { return indices_; }
  double smallest_singular_value() const { return smin_; }

  /// Rows of X at the interpolation indices, P^T X.
  DenseMatrix sampled(const DenseMatrix& X) const {
    DenseMatrix S(static_cast<Eigen::Index>(indices_.size()), X.cols());
    for (std::size_t r = 0; r < indices_.size(); ++r)
      S.row(static_cast<Eigen::Index>(r)) = X.row(indices_[r]);
    return S;
  }

  Vector sampled(const Vector& x) const {
    Vector s(static_cast<Eigen::Index>(indices_.size()));
    for (std::size_t r = 0; r < indices_.size(); ++r)
      s(static_cast<Eigen::Index>(r)) = x(indices_[r]);
    return s;
  }

  /// Interpolation from sampled values: Phi (P^T Phi)^{-1} s.
  Vector interpolate(const Vector& sampled_values) const {
    if (size() == 0) return Vector::Zero(space_dim());
    return modes_ * lu_.solve(sampled_values);
  }

  DenseMatrix interpolate(const DenseMatrix& sampled_values) const {
    if (size() == 0) return DenseMatrix::Zero(space_dim(), sampled_values.cols());
    return modes_ * lu_.solve(sampled_values);
  }

  /// Interpolation coefficients only, (P^T Phi)^{-1} s.
  DenseMatrix coefficients(const DenseMatrix& sampled_values) const {
    return lu_.solve(sampled_values);
  }

 private:
  DenseMatrix modes_;
  std::vector<Eigen::Index> indices_;
  Eigen::PartialPivLU<DenseMatrix> lu_;  // of P^T Phi
  double smin_ = 0.0;
};

inline DeimData make_empty_deim(Eigen::Index space_dim) {
  return DeimData(DenseMatrix(space_dim, 0), {});
}

/// Phi (P^T Phi)^{-1} P^T g; interpolates g exactly at the selected rows.
inline Vector deim_apply(const DeimData& deim, const Vector& g) {
  if (deim.size() == 0) return Vector::Zero(g.size());
  return deim.interpolate(deim.sampled(g));
}

inline DenseMatrix deim_apply(const DeimData& deim, const DenseMatrix& G) {
  if (deim.size() == 0) return DenseMatrix::Zero(G.rows(), G.cols());
  return deim.interpolate(deim.sampled(G));
}

/// Greedy interpolation-point selection for new orthonormal modes, appended
/// to the existing data. For each mode the residual against the current
/// interpolant is formed and the row of largest magnitude is selected
/// (first index on ties). An empty existing basis is seeded with the
/// largest-magnitude row of the first mode.
inline DeimData deim_points(const DenseMatrix& new_modes, const DeimData& existing) {
  DenseMatrix modes = existing.modes();
  std::vector<Eigen::Index> indices = existing.indices();
  require(new_modes.cols() >= 1, "deim_points: no modes given");
  require(existing.size() == 0 || new_modes.rows() == existing.space_dim(),
          "deim_points: dimension mismatch");

  Eigen::Index j0 = 0;
  if (modes.cols() == 0) {
    Eigen::Index i = 0;
    new_modes.col(0).cwiseAbs().maxCoeff(&i);
    modes = new_modes.col(0);
    indices.push_back(i);
    j0 = 1;
  }
  for (Eigen::Index j = j0; j < new_modes.cols(); ++j) {
    const DeimData current(modes, indices);  // revalidates P^T Phi
    const Vector gamma = current.coefficients(current.sampled(Vector(new_modes.col(j))));
    const Vector r = new_modes.col(j) - modes * gamma;
    Eigen::Index i = 0;
    r.cwiseAbs().maxCoeff(&i);
    for (Eigen::Index prev : indices)
      if (prev == i)
        throw Error("deim_points: selected index " + std::to_string(i) +
                    " already in use (numerically dependent modes)");
    modes.conservativeResize(Eigen::NoChange, modes.cols() + 1);
    modes.col(modes.cols() - 1) = new_modes.col(j);
    indices.push_back(i);
  }
  return DeimData(std::move(modes), std::move(indices));
}

struct DeimUpdateResult {
  DeimData deim;
  Eigen::Index grown = 0;  // number of appended modes; 0 means no growth
};

/// Successive DEIM enlargement from one FE trajectory. The positive-part
/// snapshots are deflated by the current span, compressed by an
/// identity-inner-product POD of length min(L_grow, rank), and appended
/// together with their interpolation points.
inline DeimUpdateResult deim_update(const DeimData& deim, const Trajectory& fe_trajectory,
                                    Eigen::Index L_grow, double rank_tol = 1e-10) {
  require(L_grow >= 1, "deim_update: L_grow must be positive");
  const auto K = fe_trajectory.steps();
  DenseMatrix E = fe_trajectory.values.rightCols(K).cwiseMax(0.0);
  if (deim.size() > 0) E -= deim.modes() * (deim.modes().transpose() * E);

  const DenseMatrix G = E.transpose() * E;
  const SymEig eig = eig_sym_desc(G);
  const Vector sv = eig.values.cwiseMax(0.0).cwiseSqrt();
  const Eigen::Index rank = numerical_rank(sv, rank_tol);
  const Eigen::Index grow = std::min(L_grow, rank);
  if (grow == 0) return {deim, 0};

  DenseMatrix new_modes(E.rows(), grow);
  for (Eigen::Index j = 0; j < grow; ++j)
    new_modes.col(j) = E * eig.vectors.col(j) / sv(j);
  // one extra orthogonalization pass keeps Phi orthonormal across many updates
  if (deim.size() > 0)
    new_modes -= deim.modes() * (deim.modes().transpose() * new_modes);
  for (Eigen::Index j = 0; j < grow; ++j) {
    for (Eigen::Index i = 0; i < j; ++i)
      new_modes.col(j) -= new_modes.col(i).dot(new_modes.col(j)) * new_modes.col(i);
    new_modes.col(j).normalize();
  }
  return {deim_points(new_modes, deim), grow};
}

}  // namespace strb
