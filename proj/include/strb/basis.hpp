#pragma once

// Spatial reduced basis: V-orthonormal modes stored as FE coefficient
// columns, rank-one POD extraction through the snapshot Gram matrix, and
// the V-orthogonal projection onto the current span.

#include <cmath>

#include "strb/linalg.hpp"
#include "strb/operators.hpp"

namespace strb {

struct RBBasis {
  DenseMatrix modes;  // N x ell, Psi^T V Psi = I

  Eigen::Index size() const { return modes.cols(); }
  bool empty() const { return modes.cols() == 0; }
};

inline RBBasis make_empty_basis(const FEOperators& ops) {
  RBBasis b;
  b.modes.resize(ops.dofs(), 0);
  return b;
}

inline double v_norm(const FEOperators& ops, const Vector& v) {
  return std::sqrt(std::max(0.0, v.dot(ops.stiffness * v)));
}

/// Dominant POD mode of the snapshot columns with respect to the V inner
/// product, via the Gram matrix G_ij = s_i^T V s_j. The returned mode has
/// unit V-norm.
inline Vector pod_first_mode(const DenseMatrix& snapshots, const FEOperators& ops) {
  require(snapshots.cols() >= 1, "pod_first_mode: no snapshots");
  const DenseMatrix VS = ops.stiffness * snapshots;
  const DenseMatrix G = snapshots.transpose() * VS;
  const SymEig eig = eig_sym_desc(G);
  const double lambda = eig.values(0);
  if (!(lambda > 0.0)) throw Error("pod_first_mode: all snapshots vanish");
  Vector psi = snapshots * eig.vectors.col(0) / std::sqrt(lambda);
  psi /= v_norm(ops, psi);
  return psi;
}

/// V-orthogonal projection Psi (Psi^T V v) onto the basis span.
inline Vector project_V(const RBBasis& basis, const FEOperators& ops, const Vector& v) {
  if (basis.empty()) return Vector::Zero(v.size());
  return basis.modes * (basis.modes.transpose() * (ops.stiffness * v));
}

/// Columnwise projection of a whole trajectory.
inline DenseMatrix project_V(const RBBasis& basis, const FEOperators& ops,
                             const DenseMatrix& Y) {
  if (basis.empty()) return DenseMatrix::Zero(Y.rows(), Y.cols());
  return basis.modes * (basis.modes.transpose() * (ops.stiffness * Y));
}

/// Append the V-orthonormalized component of psi, re-orthogonalized twice.
inline void extend_basis(RBBasis& basis, const FEOperators& ops, const Vector& psi) {
  Vector w = psi - project_V(basis, ops, psi);
  w -= project_V(basis, ops, w);
  const double nw = v_norm(ops, w);
  if (nw <= 1e-12 * std::max(1.0, v_norm(ops, psi)))
    throw Error("extend_basis: redundant mode (already in span)");
  basis.modes.conservativeResize(Eigen::NoChange, basis.size() + 1);
  basis.modes.col(basis.size() - 1) = w / nw;
}

}  // namespace strb
