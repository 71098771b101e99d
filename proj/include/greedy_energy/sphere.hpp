#pragma once

// Points on S^d embedded in R^{d+1}, deterministic quasi-uniform point sets
// and the normalized measure of spherical caps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace greedy {

/// Unit vector in R^{d+1}, d >= 1.
class SpherePoint {
 public:
  explicit SpherePoint(Eigen::VectorXd coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw std::domain_error("SpherePoint: need at least 2 coordinates");
    if (!coords_.allFinite()) throw std::domain_error("SpherePoint: non-finite coordinate");
    const double norm = coords_.norm();
    if (!(norm > 0.0)) throw std::domain_error("SpherePoint: zero vector");
    coords_ /= norm;
  }

  static SpherePoint basis(int d, int i) {
    if (d < 1 || i < 0 || i > d) throw std::domain_error("SpherePoint::basis: bad index");
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d + 1);
    v[i] = 1.0;
    return SpherePoint(std::move(v));
  }

  /// (cos theta, sin theta) on S^1.
  static SpherePoint from_angle(double theta) {
    Eigen::VectorXd v(2);
    v << std::cos(theta), std::sin(theta);
    return SpherePoint(std::move(v));
  }

  int dimension() const noexcept { return static_cast<int>(coords_.size()) - 1; }
  const Eigen::VectorXd& coords() const noexcept { return coords_; }
  double operator[](int i) const { return coords_[i]; }

  /// Antipode. Negation is exact, so no renormalization happens here.
  SpherePoint operator-() const {
    SpherePoint p = *this;
    p.coords_ = -p.coords_;
    return p;
  }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) { return a.coords_ == b.coords_; }

 private:
  Eigen::VectorXd coords_;
};

/// Euclidean distance |a - b|, formed from the difference vector so that
/// nearby points keep their relative accuracy.
inline double chord_distance(const SpherePoint& a, const SpherePoint& b) {
  return (a.coords() - b.coords()).norm();
}

namespace detail {

/// Generalized golden ratio: the positive root of x^{s+1} = x + 1.
inline double harmonious_ratio(int s) {
  double x = 2.0;
  for (int i = 0; i < 64; ++i) x = std::pow(1.0 + x, 1.0 / (s + 1));
  return x;
}

/// j-th point of the s-dimensional additive recurrence frac(1/2 + j alpha),
/// alpha_i = phi_s^{-i}.
inline std::vector<double> kronecker_point(int s, std::uint64_t j) {
  const double phi = harmonious_ratio(s);
  std::vector<double> u(s);
  for (int i = 0; i < s; ++i) {
    const double alpha = std::fmod(std::pow(phi, -(i + 1)), 1.0);
    const double v = 0.5 + static_cast<double>(j) * alpha;
    u[i] = v - std::floor(v);
  }
  return u;
}

/// Map uniform coordinates to a uniformly distributed point of S^d.
/// Consumes 2 * ceil((d + 1) / 2) coordinates.
inline Eigen::VectorXd uniform_to_sphere(int d, const double* u) {
  constexpr double kTiny = 1e-300;
  const double two_pi = 2.0 * std::numbers::pi;
  Eigen::VectorXd v(d + 1);
  if (d == 2) {
    const double z = 1.0 - 2.0 * u[0];
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    v << z, r * std::cos(two_pi * u[1]), r * std::sin(two_pi * u[1]);
    return v;
  }
  if (d == 3) {
    // Shoemake's uniform unit quaternion; u[3] is unused.
    const double a = std::sqrt(1.0 - u[0]);
    const double b = std::sqrt(u[0]);
    v << b * std::cos(two_pi * u[2]), a * std::sin(two_pi * u[1]), a * std::cos(two_pi * u[1]),
        b * std::sin(two_pi * u[2]);
    return v;
  }
  for (int i = 0; i <= d; i += 2) {
    const double r = std::sqrt(-2.0 * std::log(std::max(u[i], kTiny)));
    v[i] = r * std::cos(two_pi * u[i + 1]);
    if (i + 1 <= d) v[i + 1] = r * std::sin(two_pi * u[i + 1]);
  }
  return v;
}

inline int sphere_coordinates_needed(int d) { return 2 * ((d + 2) / 2); }

}  // namespace detail

/// j-th point of a deterministic low-discrepancy stream on S^d.
inline SpherePoint quasi_uniform_point(int d, std::uint64_t j) {
  if (d < 1) throw std::domain_error("quasi_uniform_point: d must be >= 1");
  if (d == 1) {
    const double t = detail::kronecker_point(1, j)[0];
    return SpherePoint::from_angle(2.0 * std::numbers::pi * t);
  }
  const auto u = detail::kronecker_point(detail::sphere_coordinates_needed(d), j);
  return SpherePoint(detail::uniform_to_sphere(d, u.data()));
}

/// Quasi-uniform points covering a closed hemisphere (x_1 >= 0 on S^1,
/// x_0 >= 0 otherwise), one column per point. Every point of S^d has itself or its
/// antipode within roughly one grid spacing of some column.
///   d = 1: angles pi j / count on [0, pi), exact equispacing.
///   d = 2: Fibonacci lattice on the upper half.
///   d >= 3: low-discrepancy stream reflected into the half-space.
inline Eigen::MatrixXd hemisphere_grid(int d, std::size_t count) {
  if (d < 1) throw std::domain_error("hemisphere_grid: d must be >= 1");
  if (count < 1) throw std::domain_error("hemisphere_grid: count must be >= 1");
  Eigen::MatrixXd grid(d + 1, static_cast<Eigen::Index>(count));
  const double pi = std::numbers::pi;
  if (d == 1) {
    for (std::size_t j = 0; j < count; ++j) {
      const double theta = pi * static_cast<double>(j) / static_cast<double>(count);
      grid(0, j) = std::cos(theta);
      grid(1, j) = std::sin(theta);
    }
    return grid;
  }
  if (d == 2) {
    const double golden = std::numbers::phi;
    for (std::size_t i = 0; i < count; ++i) {
      const double z = 1.0 - (static_cast<double>(i) + 0.5) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = 2.0 * pi * static_cast<double>(i) / golden;
      grid(0, i) = z;
      grid(1, i) = r * std::cos(phi);
      grid(2, i) = r * std::sin(phi);
    }
    return grid;
  }
  const int s = detail::sphere_coordinates_needed(d);
  for (std::size_t i = 0; i < count; ++i) {
    const auto u = detail::kronecker_point(s, i + 1);
    Eigen::VectorXd v = detail::uniform_to_sphere(d, u.data());
    v.normalize();
    if (v[0] < 0.0) v = -v;
    grid.col(static_cast<Eigen::Index>(i)) = v;
  }
  return grid;
}

/// Normalized surface measure of the cap {x in S^d : <x, c> >= t}, t in [-1, 1].
/// Uses J_m(t) = int_t^1 (1 - s^2)^{m/2} ds with m = d - 2 and the recurrence
/// (m + 1) J_m = m J_{m-2} - t (1 - t^2)^{m/2}.
inline double cap_measure(int d, double t) {
  if (d < 1) throw std::domain_error("cap_measure: d must be >= 1");
  if (!(t >= -1.0 && t <= 1.0)) throw std::domain_error("cap_measure: height must lie in [-1, 1]");
  const int m = d - 2;
  const double w = std::max(0.0, 1.0 - t * t);
  auto j_of = [&](double x, double wx) {
    const bool odd = (m % 2 != 0);
    int k = odd ? -1 : 0;
    double value = odd ? std::acos(x) : 1.0 - x;
    while (k < m) {
      k += 2;
      value = (k * value - x * std::pow(wx, 0.5 * k)) / (k + 1);
    }
    return value;
  };
  return j_of(t, w) / j_of(-1.0, 0.0);
}

}  // namespace greedy
