#pragma once

// Spatio-temporal discretization backbone: the time grid, the spatial P1
// mass/stiffness/lumped-mass matrices, load vectors of the separable source,
// nodal trajectories and their exact-in-time norms. Trial functions are
// piecewise linear in time, test functions piecewise constant; all slab
// integrals of those factors are evaluated in closed form.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "strb/linalg.hpp"
#include "strb/mesh.hpp"
#include "strb/problem.hpp"

namespace strb {

struct TimeGrid {
  Vector instants;  // K+1 values, 0 = t_0 < ... < t_K = T
  Vector dt;        // K step lengths

  int steps() const { return static_cast<int>(dt.size()); }
  double total() const { return instants(instants.size() - 1); }
  double max_dt() const { return dt.maxCoeff(); }
};

inline TimeGrid make_time_grid(double T, int K) {
  require(K >= 1 && T > 0.0, "make_time_grid: need K >= 1 and T > 0");
  TimeGrid g;
  g.instants = Vector::LinSpaced(K + 1, 0.0, T);
  g.instants(0) = 0.0;
  g.instants(K) = T;
  g.dt = g.instants.tail(K) - g.instants.head(K);
  return g;
}

inline TimeGrid make_time_grid(const std::vector<double>& instants) {
  require(instants.size() >= 2 && instants.front() == 0.0,
          "make_time_grid: need instants starting at 0");
  TimeGrid g;
  g.instants = Eigen::Map<const Vector>(instants.data(),
                                        static_cast<Eigen::Index>(instants.size()));
  const auto K = g.instants.size() - 1;
  g.dt = g.instants.tail(K) - g.instants.head(K);
  require((g.dt.array() > 0.0).all(), "make_time_grid: instants not increasing");
  return g;
}

// Explicit forms of the temporal Galerkin entries for hat trial functions
// sigma_l and indicator test functions tau_k, 1-based l,k in 1..K.
inline double temporal_derivative_mass_entry(int l, int k) {
  return (l == k ? 1.0 : 0.0) - (l + 1 == k ? 1.0 : 0.0);
}

inline double temporal_mass_entry(int l, int k, const TimeGrid& grid) {
  double v = 0.0;
  if (l == k) v += 0.5 * grid.dt(l - 1);
  if (l + 1 == k) v += 0.5 * grid.dt(l);
  return v;
}

struct FEOperators {
  SpatialMesh mesh;
  TimeGrid time;
  SparseSymMatrix mass;       // M, consistent
  SparseSymMatrix stiffness;  // V
  Vector lumped_mass;         // diagonal of the lumped mass matrix

  Eigen::Index dofs() const { return mesh.num_interior; }
};

/// Standard P1 assembly over the triangle list with closed-form element
/// matrices; boundary rows/columns are eliminated. The lumped diagonal is
/// |supp(zeta_j)| / 3, accumulated as area/3 per incident triangle.
inline FEOperators assemble_operators(const SpatialMesh& mesh, const TimeGrid& time) {
  FEOperators ops;
  ops.mesh = mesh;
  ops.time = time;
  const Eigen::Index N = mesh.num_interior;
  ops.lumped_mass = Vector::Zero(N);

  std::vector<Eigen::Triplet<double>> tm, tv;
  tm.reserve(mesh.triangles.size() * 9);
  tv.reserve(mesh.triangles.size() * 9);

  for (const auto& tri : mesh.triangles) {
    std::array<double, 3> x{}, y{};
    std::array<Eigen::Index, 3> dof{};
    for (int v = 0; v < 3; ++v) {
      auto [xx, yy] = mesh.node_xy(tri[static_cast<std::size_t>(v)]);
      x[static_cast<std::size_t>(v)] = xx;
      y[static_cast<std::size_t>(v)] = yy;
      dof[static_cast<std::size_t>(v)] =
          mesh.interior_index(tri[static_cast<std::size_t>(v)]);
    }
    const double area =
        0.5 * std::abs((x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]));
    // gradients of the barycentric functions: (b_i, c_i) / (2 area)
    const std::array<double, 3> b{y[1] - y[2], y[2] - y[0], y[0] - y[1]};
    const std::array<double, 3> c{x[2] - x[1], x[0] - x[2], x[1] - x[0]};

    for (int i = 0; i < 3; ++i) {
      const auto di = dof[static_cast<std::size_t>(i)];
      if (di < 0) continue;
      ops.lumped_mass(di) += area / 3.0;
      for (int j = 0; j < 3; ++j) {
        const auto dj = dof[static_cast<std::size_t>(j)];
        if (dj < 0) continue;
        const double mij = area / 12.0 * (i == j ? 2.0 : 1.0);
        const double vij = (b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)] +
                            c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)]) /
                           (4.0 * area);
        tm.emplace_back(di, dj, mij);
        tv.emplace_back(di, dj, vij);
      }
    }
  }
  ops.mass.resize(N, N);
  ops.stiffness.resize(N, N);
  ops.mass.setFromTriplets(tm.begin(), tm.end());
  ops.stiffness.setFromTriplets(tv.begin(), tv.end());
  ops.mass.makeCompressed();
  ops.stiffness.makeCompressed();
  return ops;
}

/// Quadrature of a spatial function against the interior hat functions.
inline Vector assemble_load_vector(const SpatialMesh& mesh,
                                   const std::function<double(double, double)>& f) {
  Vector load = Vector::Zero(mesh.num_interior);
  const auto& rule = tri_quadrature7();
  for (const auto& tri : mesh.triangles) {
    std::array<double, 3> x{}, y{};
    std::array<Eigen::Index, 3> dof{};
    for (int v = 0; v < 3; ++v) {
      auto [xx, yy] = mesh.node_xy(tri[static_cast<std::size_t>(v)]);
      x[static_cast<std::size_t>(v)] = xx;
      y[static_cast<std::size_t>(v)] = yy;
      dof[static_cast<std::size_t>(v)] =
          mesh.interior_index(tri[static_cast<std::size_t>(v)]);
    }
    const double area =
        0.5 * std::abs((x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]));
    for (const auto& q : rule) {
      const double qx = q.l0 * x[0] + q.l1 * x[1] + q.l2 * x[2];
      const double qy = q.l0 * y[0] + q.l1 * y[1] + q.l2 * y[2];
      const double fv = f(qx, qy) * q.w * area;
      const std::array<double, 3> lambda{q.l0, q.l1, q.l2};
      for (int v = 0; v < 3; ++v) {
        const auto dv = dof[static_cast<std::size_t>(v)];
        if (dv >= 0) load(dv) += fv * lambda[static_cast<std::size_t>(v)];
      }
    }
  }
  return load;
}

/// Parameter-independent source data: spatial loads of the separable
/// factors plus the temporal factor sampled on the grid.
struct SeparableSource {
  DenseMatrix spatial_loads;  // N x pF
  Vector gamma;               // K+1 samples gamma(t_k)
  std::function<Vector(const ParameterVector&)> beta;
};

inline SeparableSource assemble_separable_source(const ProblemDefinition& problem,
                                                 const FEOperators& ops) {
  SeparableSource src;
  const auto pF = problem.source_rank();
  src.spatial_loads.resize(ops.dofs(), pF);
  for (Eigen::Index i = 0; i < pF; ++i)
    src.spatial_loads.col(i) =
        assemble_load_vector(ops.mesh, problem.space_factors[static_cast<std::size_t>(i)]);
  const auto K = ops.time.steps();
  src.gamma.resize(K + 1);
  for (int k = 0; k <= K; ++k) src.gamma(k) = problem.time_factor(ops.time.instants(k));
  src.beta = problem.beta;
  return src;
}

/// Load matrix of one parameter in rank-one form, F^k = gamma(k) * b(mu).
struct SourceMatrix {
  Vector b;      // N
  Vector gamma;  // K+1

  Vector col(int k) const { return gamma(k) * b; }
  double col_norm(int k) const { return std::abs(gamma(k)) * b.norm(); }
  DenseMatrix dense() const { return b * gamma.transpose(); }
};

inline SourceMatrix source_for(const SeparableSource& src, const ParameterVector& mu) {
  SourceMatrix F;
  F.b = src.spatial_loads * src.beta(mu);
  F.gamma = src.gamma;
  return F;
}

/// Load matrix F(mu) with column k the load vector of f(t_k; mu), via the
/// separable factors.
inline DenseMatrix assemble_source_matrix(const ProblemDefinition& problem,
                                          const ParameterVector& mu,
                                          const FEOperators& ops) {
  require(problem.box.contains(mu), "assemble_source_matrix: parameter outside the box");
  return source_for(assemble_separable_source(problem, ops), mu).dense();
}

/// Nodal coefficient trajectory, columns y^0 .. y^K with y^0 = 0.
struct Trajectory {
  DenseMatrix values;  // N x (K+1)

  int steps() const { return static_cast<int>(values.cols()) - 1; }
};

/// Slab averages (y^{k-1} + y^k) / 2 for k = 1..K.
inline DenseMatrix time_average(const DenseMatrix& y) {
  const auto K = y.cols() - 1;
  return 0.5 * (y.leftCols(K) + y.rightCols(K));
}

inline DenseMatrix time_average(const Trajectory& y) { return time_average(y.values); }

/// Weight for the spatial inner product: either a sparse matrix or a
/// diagonal (lumped) one.
class Weight {
 public:
  explicit Weight(const SparseSymMatrix& A) : sparse_(&A) {}
  explicit Weight(const Vector& d) : diag_(&d) {}

  DenseMatrix apply(const DenseMatrix& X) const {
    return sparse_ ? DenseMatrix(*sparse_ * X) : DenseMatrix(diag_->asDiagonal() * X);
  }
  Vector apply(const Vector& x) const {
    return sparse_ ? Vector(*sparse_ * x) : Vector(diag_->cwiseProduct(x));
  }

 private:
  const SparseSymMatrix* sparse_ = nullptr;
  const Vector* diag_ = nullptr;
};

/// Exact integral over (0,T) of <x(t), y(t)>_A for trajectories that are
/// piecewise linear in time (nodal columns x^0..x^K).
inline double inner_lin_lin(const DenseMatrix& X, const DenseMatrix& Y,
                            const TimeGrid& grid, const Weight& W) {
  const DenseMatrix AY = W.apply(Y);
  double s = 0.0;
  for (int k = 1; k <= grid.steps(); ++k) {
    const double a0b0 = X.col(k - 1).dot(AY.col(k - 1));
    const double a0b1 = X.col(k - 1).dot(AY.col(k));
    const double a1b0 = X.col(k).dot(AY.col(k - 1));
    const double a1b1 = X.col(k).dot(AY.col(k));
    s += grid.dt(k - 1) / 6.0 * (2.0 * a0b0 + a0b1 + a1b0 + 2.0 * a1b1);
  }
  return s;
}

/// Exact integral of <x(t), z(t)>_A with x piecewise linear (nodal columns)
/// and z piecewise constant (slab columns z^1..z^K).
inline double inner_lin_const(const DenseMatrix& X, const DenseMatrix& Z,
                              const TimeGrid& grid, const Weight& W) {
  const DenseMatrix AZ = W.apply(Z);
  double s = 0.0;
  for (int k = 1; k <= grid.steps(); ++k)
    s += grid.dt(k - 1) * 0.5 * (X.col(k - 1) + X.col(k)).dot(AZ.col(k - 1));
  return s;
}

/// Integral of <z(t), w(t)>_A for two piecewise constant slab families.
inline double inner_const_const(const DenseMatrix& Z, const DenseMatrix& Wm,
                                const TimeGrid& grid, const Weight& W) {
  const DenseMatrix AW = W.apply(Wm);
  double s = 0.0;
  for (int k = 1; k <= grid.steps(); ++k)
    s += grid.dt(k - 1) * Z.col(k - 1).dot(AW.col(k - 1));
  return s;
}

struct TrajectoryNorms {
  double l2V = 0.0;      // L2(0,T;V) norm of the trajectory
  double l2H = 0.0;      // L2(0,T;H) norm
  double dt_l2H = 0.0;   // L2(0,T;H) norm of the (piecewise constant) time derivative
  double final_H = 0.0;  // |y(T)|_H
  double final_V = 0.0;  // |y(T)|_V
};

inline TrajectoryNorms trajectory_norms(const Trajectory& y, const FEOperators& ops) {
  TrajectoryNorms out;
  const auto& Y = y.values;
  out.l2V = std::sqrt(std::max(0.0, inner_lin_lin(Y, Y, ops.time, Weight(ops.stiffness))));
  out.l2H = std::sqrt(std::max(0.0, inner_lin_lin(Y, Y, ops.time, Weight(ops.mass))));
  double d = 0.0;
  for (int k = 1; k <= ops.time.steps(); ++k) {
    const Vector diff = Y.col(k) - Y.col(k - 1);
    d += diff.dot(ops.mass * diff) / ops.time.dt(k - 1);
  }
  out.dt_l2H = std::sqrt(std::max(0.0, d));
  const Vector yT = Y.col(Y.cols() - 1);
  out.final_H = std::sqrt(std::max(0.0, yT.dot(ops.mass * yT)));
  out.final_V = std::sqrt(std::max(0.0, yT.dot(ops.stiffness * yT)));
  return out;
}

/// Norm of a piecewise constant slab family, (sum_k dt_k <v^k, v^k>_A)^(1/2).
inline double pw_const_norm(const DenseMatrix& slabs, const TimeGrid& grid, const Weight& W) {
  require(slabs.cols() == grid.steps(), "pw_const_norm: slab count mismatch");
  return std::sqrt(std::max(0.0, inner_const_const(slabs, slabs, grid, W)));
}

}  // namespace strb
