#pragma once

// Parametrized PDE data for  y' - c(mu) Lap y + a(mu) max{0,y} = f(t;mu)
// on (0,1)^2 with homogeneous Dirichlet boundary and y(0) = 0:
// admissible parameter box, coefficient functions and the separable source.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "strb/linalg.hpp"

namespace strb {

using ParameterVector = Eigen::VectorXd;

/// Box of admissible parameters, lower <= upper componentwise.
struct AdmissibleSet {
  Vector lower;
  Vector upper;

  Eigen::Index dim() const { return lower.size(); }

  bool contains(const ParameterVector& mu) const {
    if (mu.size() != lower.size()) return false;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
      const double slack = 1e-12 * std::max(1.0, upper(i) - lower(i));
      if (mu(i) < lower(i) - slack || mu(i) > upper(i) + slack) return false;
    }
    return true;
  }
};

inline AdmissibleSet make_box(std::vector<double> lo, std::vector<double> hi) {
  require(lo.size() == hi.size() && !lo.empty(), "make_box: bad bounds");
  AdmissibleSet box;
  box.lower = Eigen::Map<Vector>(lo.data(), static_cast<Eigen::Index>(lo.size()));
  box.upper = Eigen::Map<Vector>(hi.data(), static_cast<Eigen::Index>(hi.size()));
  for (Eigen::Index i = 0; i < box.lower.size(); ++i)
    require(box.lower(i) <= box.upper(i), "make_box: lower > upper");
  return box;
}

/// Problem data. The source is kept in separable form
///   f(t;mu)(x) = time_factor(t) * sum_i beta(mu)_i * space_factors[i](x),
/// which both the direct assembly path and the reduced-order pipeline use;
/// value() evaluates the same function pointwise for validation quadrature.
struct ProblemDefinition {
  std::string name;
  AdmissibleSet box;
  double final_time = 1.0;

  std::function<double(const ParameterVector&)> diffusion;   // c(mu) > 0
  std::function<double(const ParameterVector&)> absorption;  // a(mu) >= 0, acts on max{0,y}

  std::function<double(double)> time_factor;                               // gamma(t)
  std::vector<std::function<double(double, double)>> space_factors;        // g_i(x1,x2)
  std::function<Vector(const ParameterVector&)> beta;                      // mu -> R^{pF}

  Eigen::Index source_rank() const {
    return static_cast<Eigen::Index>(space_factors.size());
  }

  /// Pointwise source value f(t;mu)(x1,x2).
  double source_value(double t, const ParameterVector& mu, double x1, double x2) const {
    const Vector b = beta(mu);
    double s = 0.0;
    for (Eigen::Index i = 0; i < source_rank(); ++i)
      s += b(i) * space_factors[static_cast<std::size_t>(i)](x1, x2);
    return time_factor(t) * s;
  }
};

inline ProblemDefinition make_example1() {
  ProblemDefinition p;
  p.name = "example1";
  p.box = make_box({-10.0}, {10.0});
  p.final_time = 20.0;
  p.diffusion = [](const ParameterVector& mu) { return 5.0 / (5.0 + std::abs(mu(0))); };
  p.absorption = [](const ParameterVector& mu) { return 1.0 + 2.0 * std::abs(mu(0)); };
  const double T = p.final_time;
  p.time_factor = [T](double t) {
    return 10.0 * std::sin(4.0 * std::numbers::pi * t / T) * std::sqrt(1.0 + t);
  };
  p.space_factors = {[](double x1, double x2) {
    return (0.5 - x1) * std::sin(std::numbers::pi * x1) * std::sin(std::numbers::pi * x2);
  }};
  p.beta = [](const ParameterVector& mu) { return Vector::Constant(1, mu(0)); };
  return p;
}

inline ProblemDefinition make_example2() {
  ProblemDefinition p;
  p.name = "example2";
  p.box = make_box({-2.0, -2.0}, {2.0, 2.0});
  p.final_time = 10.0;
  p.diffusion = [](const ParameterVector& mu) { return 3.0 / (1.0 + std::abs(mu(0))); };
  p.absorption = [](const ParameterVector& mu) { return 1.0 + 5.0 * mu.norm(); };
  const double T = p.final_time;
  p.time_factor = [T](double t) {
    return 10.0 * std::sin(4.0 * std::numbers::pi * t / T) * std::sqrt(1.0 + t);
  };
  p.space_factors = {
      [](double x1, double x2) { return x1 <= 0.5 ? x1 * x2 : 0.0; },
      [](double x1, double x2) { return x1 > 0.5 ? x1 * x1 * x2 * x2 : 0.0; }};
  p.beta = [](const ParameterVector& mu) {
    Vector b(2);
    b << mu(0), mu(1);
    return b;
  };
  return p;
}

/// Tensor grid over the box, endpoints included, equidistant per dimension,
/// lexicographic order with the first component varying slowest.
inline std::vector<ParameterVector> sample_grid(const AdmissibleSet& box,
                                                const std::vector<int>& counts) {
  const auto p = static_cast<std::size_t>(box.dim());
  require(counts.size() == p, "sample_grid: counts size mismatch");
  for (int c : counts) require(c >= 2, "sample_grid: need at least 2 points per dimension");

  std::size_t total = 1;
  for (int c : counts) total *= static_cast<std::size_t>(c);

  std::vector<ParameterVector> grid;
  grid.reserve(total);
  std::vector<int> idx(p, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    ParameterVector mu(box.dim());
    for (std::size_t d = 0; d < p; ++d) {
      const double theta = static_cast<double>(idx[d]) / static_cast<double>(counts[d] - 1);
      mu(static_cast<Eigen::Index>(d)) =
          box.lower(static_cast<Eigen::Index>(d)) * (1.0 - theta) +
          box.upper(static_cast<Eigen::Index>(d)) * theta;
    }
    grid.push_back(std::move(mu));
    for (std::size_t d = p; d-- > 0;) {
      if (++idx[d] < counts[d]) break;
      idx[d] = 0;
    }
  }
  return grid;
}

}  // namespace strb
