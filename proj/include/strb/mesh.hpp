#pragma once

// Uniform right-angled triangulation of (0,1)^2 with a fixed diagonal
// direction. Only interior nodes carry degrees of freedom (homogeneous
// Dirichlet data).

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "strb/linalg.hpp"

namespace strb {

struct SpatialMesh {
  int n = 0;       // subdivisions per side, h = 1/n
  double h = 0.0;
  Eigen::Index num_interior = 0;                // (n-1)^2
  std::vector<std::array<int, 3>> triangles;    // grid node ids, 2*n^2 entries
  DenseMatrix interior_coords;                  // N x 2

  int grid_id(int i, int j) const { return j * (n + 1) + i; }

  std::pair<double, double> node_xy(int gid) const {
    const int i = gid % (n + 1);
    const int j = gid / (n + 1);
    return {i * h, j * h};
  }

  /// Interior dof index of a grid node, or -1 for boundary nodes.
  Eigen::Index interior_index(int gid) const {
    const int i = gid % (n + 1);
    const int j = gid / (n + 1);
    if (i < 1 || i > n - 1 || j < 1 || j > n - 1) return -1;
    return static_cast<Eigen::Index>(j - 1) * (n - 1) + (i - 1);
  }
};

/// Each grid square is split along the (1,1) diagonal into two triangles.
inline SpatialMesh build_mesh(int n) {
  require(n >= 2, "build_mesh: need n >= 2, got " + std::to_string(n));
  SpatialMesh mesh;
  mesh.n = n;
  mesh.h = 1.0 / n;
  mesh.num_interior = static_cast<Eigen::Index>(n - 1) * (n - 1);
  mesh.triangles.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = mesh.grid_id(i, j);
      const int v10 = mesh.grid_id(i + 1, j);
      const int v11 = mesh.grid_id(i + 1, j + 1);
      const int v01 = mesh.grid_id(i, j + 1);
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  mesh.interior_coords.resize(mesh.num_interior, 2);
  for (int j = 1; j <= n - 1; ++j)
    for (int i = 1; i <= n - 1; ++i) {
      const Eigen::Index dof = mesh.interior_index(mesh.grid_id(i, j));
      mesh.interior_coords(dof, 0) = i * mesh.h;
      mesh.interior_coords(dof, 1) = j * mesh.h;
    }
  return mesh;
}

struct TriQuadPoint {
  double l0, l1, l2;  // barycentric coordinates
  double w;           // weights sum to 1, multiply by triangle area
};

/// Seven-point degree-5 rule on the reference triangle.
inline const std::array<TriQuadPoint, 7>& tri_quadrature7() {
  static const std::array<TriQuadPoint, 7> rule = [] {
    const double s15 = std::sqrt(15.0);
    const double w1 = (155.0 + s15) / 1200.0;
    const double a1 = (6.0 + s15) / 21.0;
    const double w2 = (155.0 - s15) / 1200.0;
    const double a2 = (6.0 - s15) / 21.0;
    std::array<TriQuadPoint, 7> r{};
    r[0] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0};
    r[1] = {1.0 - 2.0 * a1, a1, a1, w1};
    r[2] = {a1, 1.0 - 2.0 * a1, a1, w1};
    r[3] = {a1, a1, 1.0 - 2.0 * a1, w1};
    r[4] = {1.0 - 2.0 * a2, a2, a2, w2};
    r[5] = {a2, 1.0 - 2.0 * a2, a2, w2};
    r[6] = {a2, a2, 1.0 - 2.0 * a2, w2};
    return r;
  }();
  return rule;
}

}  // namespace strb
