#pragma once

// Numeric greedy lambda-energy sequences on S^d.
//
// a_0 is the seed; odd indices are the antipode of the previous point; each
// even index maximizes U_n(x) = sum_k |x - a_k|^lambda by a coarse search over
// a hemisphere grid (U_n is even in x when n is even) followed by local ascent
// from the best few grid cells.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include "greedy_energy/lambda.hpp"
#include "greedy_energy/sphere.hpp"

namespace greedy {

struct GreedyConfig {
  int dimension;
  Lambda lambda;
  std::size_t n_points;
  std::size_t coarse_grid_size;
  double refine_tolerance = 1e-10;
  SpherePoint seed_point;

  GreedyConfig(int d, Lambda l, std::size_t n)
      : dimension(d),
        lambda(l),
        n_points(n),
        coarse_grid_size(default_grid_size(d, n)),
        seed_point(SpherePoint::basis(std::max(d, 1), 0)) {}

  /// 4096 n grid points on S^1 (at most 2^20) and 64 n^2 on higher spheres
  /// (between 4096 and 2^18).
  static std::size_t default_grid_size(int d, std::size_t n) {
    const std::size_t m = std::max<std::size_t>(n, 1);
    if (d == 1) return std::clamp<std::size_t>(4096 * m, 4096, std::size_t{1} << 20);
    const std::size_t sq = m > (std::size_t{1} << 16) ? std::size_t{1} << 32 : 64 * m * m;
    return std::clamp<std::size_t>(sq, 4096, std::size_t{1} << 18);
  }

  void validate() const {
    if (dimension < 1) throw std::domain_error("GreedyConfig: dimension must be >= 1");
    if (n_points < 1) throw std::domain_error("GreedyConfig: n_points must be >= 1");
    if (coarse_grid_size < 64) throw std::domain_error("GreedyConfig: coarse_grid_size must be >= 64");
    if (!(refine_tolerance > 0.0)) throw std::domain_error("GreedyConfig: refine_tolerance must be > 0");
    if (seed_point.dimension() != dimension) {
      throw std::domain_error("GreedyConfig: seed point has the wrong dimension");
    }
  }
};

/// U(x) = sum_k |x - p_k|^lambda.
inline double potential(std::span<const SpherePoint> points, Lambda lambda, const SpherePoint& x) {
  if (points.empty()) throw std::domain_error("potential: empty point list");
  const double l = lambda.value();
  double s = 0.0;
  for (const auto& p : points) s += std::pow(chord_distance(p, x), l);
  return s;
}

/// H = 2 sum_{i<j} |p_i - p_j|^lambda.
inline double energy(std::span<const SpherePoint> points, Lambda lambda) {
  const double l = lambda.value();
  double s = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) s += std::pow(chord_distance(points[i], points[j]), l);
  }
  return 2.0 * s;
}

/// U_n(a_n) for every n: entry 0 is 0, entry n is the potential of the first
/// n points at the n-th.
inline std::vector<double> extremal_potentials(std::span<const SpherePoint> points, Lambda lambda) {
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t n = 1; n < points.size(); ++n) out[n] = potential(points.first(n), lambda, points[n]);
  return out;
}

namespace detail {

inline double hemisphere_spacing(int d, std::size_t count) {
  if (d == 1) return std::numbers::pi / static_cast<double>(count);
  const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
  return std::pow(0.5 * area / static_cast<double>(count), 1.0 / d);
}

/// Adds the pair {a, -a} to the tabulated potential on the grid.
inline void accumulate_pair(const Eigen::MatrixXd& grid, const SpherePoint& a, double lambda,
                            std::vector<double>& values) {
  const Eigen::VectorXd c = grid.transpose() * a.coords();
  const double half = 0.5 * lambda;
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    const double cj = std::clamp(c[j], -1.0, 1.0);
    values[j] += std::pow(2.0 - 2.0 * cj, half) + std::pow(2.0 + 2.0 * cj, half);
  }
}

/// Angle of the representative of {x, -x} in [0, pi), snapped to 0 within 1e-12.
inline double half_turn_key(const SpherePoint& x) {
  double theta = std::atan2(x[1], x[0]);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi - 1e-12) theta -= std::numbers::pi;
  if (std::abs(theta) <= 1e-12) theta = 0.0;
  return theta;
}

inline SpherePoint circle_representative(const SpherePoint& x) {
  double theta = std::atan2(x[1], x[0]);
  if (theta < -1e-12 || theta >= std::numbers::pi - 1e-12) return -x;
  return x;
}

inline bool lexicographically_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

inline SpherePoint lexicographic_representative(const SpherePoint& x) {
  const SpherePoint y = -x;
  return lexicographically_less(y.coords(), x.coords()) ? y : x;
}

/// dU/dtheta on S^1 at angle theta.
inline double circle_slope(std::span<const SpherePoint> points, double lambda, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double slope = 0.0;
  for (const auto& a : points) {
    const double dx = c - a[0];
    const double dy = s - a[1];
    const double r = std::hypot(dx, dy);
    if (r == 0.0) continue;
    // d/dtheta |x - a|^l = l |x - a|^(l-2) <x - a, x'>,  x' = (-sin, cos)
    slope += lambda * std::pow(r, lambda - 2.0) * (-dx * s + dy * c);
  }
  return slope;
}

/// Local maximization on S^1 inside [theta0 - h, theta0 + h]. Bisection on
/// the sign of the derivative when it brackets a maximum, golden-section
/// search on U otherwise.
inline SpherePoint refine_circle(std::span<const SpherePoint> points, Lambda lambda, double theta0, double h,
                                 double tol) {
  const double l = lambda.value();
  double lo = theta0 - h;
  double hi = theta0 + h;
  if (circle_slope(points, l, lo) > 0.0 && circle_slope(points, l, hi) < 0.0) {
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (circle_slope(points, l, mid) > 0.0) lo = mid;
      else hi = mid;
    }
    return SpherePoint::from_angle(0.5 * (lo + hi));
  }
  const double inv_phi = 1.0 / std::numbers::phi;
  auto u = [&](double t) { return potential(points, lambda, SpherePoint::from_angle(t)); };
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = u(x1), f2 = u(x2);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    if (f1 < f2) {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + inv_phi * (hi - lo); f2 = u(x2);
    } else {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - inv_phi * (hi - lo); f1 = u(x1);
    }
  }
  const double best = 0.5 * (lo + hi);
  return u(best) >= u(theta0) ? SpherePoint::from_angle(best) : SpherePoint::from_angle(theta0);
}

/// Tangential part of grad U at x.
inline Eigen::VectorXd tangent_gradient(std::span<const SpherePoint> points, double lambda, const SpherePoint& x) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.coords().size());
  for (const auto& a : points) {
    const Eigen::VectorXd diff = x.coords() - a.coords();
    const double r = diff.norm();
    if (r == 0.0) continue;
    g += lambda * std::pow(r, lambda - 2.0) * diff;
  }
  g -= g.dot(x.coords()) * x.coords();
  return g;
}

/// Riemannian gradient ascent. After an accepted move the next step length
/// is the Barzilai-Borwein estimate |s|^2 / |<s, dg>| (at most 4x the old
/// one); a rejected move halves it. Near the optimum, moves that keep U
/// within rounding and shrink the gradient are accepted.
inline SpherePoint refine_sphere(std::span<const SpherePoint> points, Lambda lambda, const SpherePoint& start,
                                 double h, double tol) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double l = lambda.value();
  SpherePoint x = start;
  double ux = potential(points, lambda, x);
  Eigen::VectorXd g = tangent_gradient(points, l, x);
  double gn = g.norm();
  if (gn == 0.0) return x;
  double t = h / gn;
  for (int it = 0; it < 400; ++it) {
    if (gn == 0.0) break;
    const SpherePoint y(x.coords() + t * g);
    const double step = chord_distance(x, y);
    const double uy = potential(points, lambda, y);
    Eigen::VectorXd gy = tangent_gradient(points, l, y);
    const double gyn = gy.norm();
    if (uy > ux || (uy >= ux - 4.0 * kEps * std::abs(ux) && gyn < gn)) {
      const Eigen::VectorXd s = y.coords() - x.coords();
      const double curvature = std::abs(s.dot(gy - g));
      const double bb = curvature > 0.0 ? s.squaredNorm() / curvature : 2.0 * t;
      t = std::min(bb, 4.0 * t);
      x = y;
      ux = uy;
      g = std::move(gy);
      gn = gyn;
      if (step < 0.25 * tol) break;
    } else {
      t *= 0.5;
      if (t * gn < 0.125 * tol) break;
    }
  }
  return x;
}

/// Picks the maximizer of U_n for even n given the tabulated grid values.
inline SpherePoint maximize_even(std::span<const SpherePoint> points, const GreedyConfig& cfg,
                                 const Eigen::MatrixXd& grid, const std::vector<double>& values) {
  const int d = cfg.dimension;
  const std::size_t count = values.size();
  const double h = hemisphere_spacing(d, count);
  const std::size_t pool = std::min<std::size_t>(count, d == 1 ? 1024 : 256);
  const std::size_t keep = d == 1 ? 64 : 8;

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(pool), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return values[a] > values[b] || (values[a] == values[b] && a < b);
                    });

  // Non-maximum suppression, treating x and -x as the same cell.
  const double radius = 3.0 * h;
  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < pool && seeds.size() < keep; ++i) {
    const auto col = grid.col(static_cast<Eigen::Index>(order[i]));
    bool isolated = true;
    for (std::size_t s : seeds) {
      const auto other = grid.col(static_cast<Eigen::Index>(s));
      if (std::min((col - other).norm(), (col + other).norm()) < radius) {
        isolated = false;
        break;
      }
    }
    if (isolated) seeds.push_back(order[i]);
  }

  std::vector<SpherePoint> candidates;
  std::vector<double> scores;
  for (std::size_t s : seeds) {
    const SpherePoint start(Eigen::VectorXd(grid.col(static_cast<Eigen::Index>(s))));
    SpherePoint refined = d == 1 ? refine_circle(points, cfg.lambda, std::atan2(start[1], start[0]), h,
                                                 cfg.refine_tolerance)
                                 : refine_sphere(points, cfg.lambda, start, h, cfg.refine_tolerance);
    scores.push_back(potential(points, cfg.lambda, refined));
    candidates.push_back(d == 1 ? circle_representative(refined) : lexicographic_representative(refined));
  }

  const double best = *std::max_element(scores.begin(), scores.end());
  const double tie = 1e-12 * std::abs(best);
  std::size_t chosen = candidates.size();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (scores[i] < best - tie) continue;
    if (chosen == candidates.size()) {
      chosen = i;
      continue;
    }
    const bool better = d == 1 ? half_turn_key(candidates[i]) < half_turn_key(candidates[chosen])
                               : lexicographically_less(candidates[i].coords(), candidates[chosen].coords());
    if (better) chosen = i;
  }
  return candidates[chosen];
}

}  // namespace detail

/// a_n for the configuration `points` (n = points.size()).
inline SpherePoint next_point(std::span<const SpherePoint> points, const GreedyConfig& cfg) {
  cfg.validate();
  if (points.empty()) throw std::domain_error("next_point: empty point list");
  if (points.size() % 2 == 1) return -points.back();
  const std::size_t half = std::max<std::size_t>(cfg.coarse_grid_size / 2, 1);
  const Eigen::MatrixXd grid = hemisphere_grid(cfg.dimension, half);
  std::vector<double> values(half, 0.0);
  for (std::size_t k = 0; k < points.size(); k += 2) {
    detail::accumulate_pair(grid, points[k], cfg.lambda.value(), values);
  }
  return detail::maximize_even(points, cfg, grid, values);
}

/// The first n_points terms of the greedy sequence started at seed_point.
inline std::vector<SpherePoint> generate(const GreedyConfig& cfg) {
  cfg.validate();
  std::vector<SpherePoint> points;
  points.reserve(cfg.n_points);
  points.push_back(cfg.seed_point);
  if (cfg.n_points == 1) return points;

  const std::size_t half = std::max<std::size_t>(cfg.coarse_grid_size / 2, 1);
  Eigen::MatrixXd grid;
  std::vector<double> values;
  if (cfg.n_points > 2) {
    grid = hemisphere_grid(cfg.dimension, half);
    values.assign(half, 0.0);
  }
  for (std::size_t n = 1; n < cfg.n_points; ++n) {
    if (n % 2 == 1) {
      points.push_back(-points.back());
      if (!values.empty()) detail::accumulate_pair(grid, points[n - 1], cfg.lambda.value(), values);
    } else {
      points.push_back(detail::maximize_even(points, cfg, grid, values));
    }
  }
  return points;
}

/// Largest gap |empirical fraction - sigma_d(cap)| over num_caps closed caps
/// {x : <x, c> >= t}; centers and heights come from a fixed low-discrepancy
/// stream, so the result is deterministic.
inline double cap_discrepancy(std::span<const SpherePoint> points, std::size_t num_caps) {
  if (points.empty()) throw std::domain_error("cap_discrepancy: empty point list");
  if (num_caps < 1) throw std::domain_error("cap_discrepancy: num_caps must be >= 1");
  const int d = points.front().dimension();
  const int s = d == 1 ? 2 : detail::sphere_coordinates_needed(d) + 1;
  const double n = static_cast<double>(points.size());
  Eigen::MatrixXd coords(d + 1, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) coords.col(static_cast<Eigen::Index>(i)) = points[i].coords();

  double worst = 0.0;
  for (std::size_t j = 1; j <= num_caps; ++j) {
    const auto u = detail::kronecker_point(s, j);
    Eigen::VectorXd c;
    if (d == 1) {
      c = SpherePoint::from_angle(2.0 * std::numbers::pi * u[0]).coords();
    } else {
      c = detail::uniform_to_sphere(d, u.data());
      c.normalize();
    }
    const double t = 2.0 * u[s - 1] - 1.0;
    const Eigen::VectorXd dots = coords.transpose() * c;
    const double inside = static_cast<double>((dots.array() >= t).count());
    worst = std::max(worst, std::abs(inside / n - cap_measure(d, t)));
  }
  return worst;
}

/// Counting-measure weights of the four atoms at one prefix length.
struct WeightSnapshot {
  std::uint64_t n = 0;
  std::array<boost::rational<std::int64_t>, 4> weights;
};

/// Greedy 2-energy sequence on S^2 whose counting measures oscillate.
struct DivergentExample {
  std::vector<SpherePoint> atoms;        // y_0 = e_0, y_1 = -e_0, y_2 = e_1, y_3 = -e_1
  std::vector<int> atom_of;              // atom index of each point
  std::vector<WeightSnapshot> snapshots; // N = 2^m and N = 3 * 2^(m-1)
  bool greedy = false;                   // odd points are antipodes and even prefixes sum to zero

  std::vector<SpherePoint> points() const {
    std::vector<SpherePoint> out;
    out.reserve(atom_of.size());
    for (int i : atom_of) out.push_back(atoms[i]);
    return out;
  }
};

/// Starts with y_0..y_3; for m = 2..m_max appends 2^(m-1) points alternating
/// y_0, y_1 and then 2^(m-1) points alternating y_2, y_3, so the prefix of
/// length 2^(m+1) again has equal weights.
inline DivergentExample divergent_lambda2_example(int m_max) {
  if (m_max < 2) throw std::domain_error("divergent_lambda2_example: m_max must be >= 2");
  if (m_max > 40) throw std::domain_error("divergent_lambda2_example: m_max too large");
  DivergentExample ex;
  ex.atoms = {SpherePoint::basis(2, 0), -SpherePoint::basis(2, 0), SpherePoint::basis(2, 1),
              -SpherePoint::basis(2, 1)};
  ex.atom_of = {0, 1, 2, 3};

  std::array<std::int64_t, 4> counts{1, 1, 1, 1};
  auto snapshot = [&](std::uint64_t n) {
    WeightSnapshot s;
    s.n = n;
    for (int i = 0; i < 4; ++i) s.weights[i] = boost::rational<std::int64_t>(counts[i], static_cast<std::int64_t>(n));
    ex.snapshots.push_back(s);
  };
  snapshot(4);
  for (int m = 2; m <= m_max; ++m) {
    const std::uint64_t block = std::uint64_t{1} << (m - 1);
    for (std::uint64_t k = 0; k < block; ++k) {
      const int a = (k % 2 == 0) ? 0 : 1;
      ex.atom_of.push_back(a);
      ++counts[a];
    }
    snapshot(3 * block);
    for (std::uint64_t k = 0; k < block; ++k) {
      const int a = (k % 2 == 0) ? 2 : 3;
      ex.atom_of.push_back(a);
      ++counts[a];
    }
    snapshot(4 * block);
  }

  bool ok = true;
  std::array<std::int64_t, 2> sum{0, 0};
  constexpr std::array<std::array<int, 2>, 4> kAtomCoords{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  for (std::size_t n = 0; n < ex.atom_of.size(); ++n) {
    const int a = ex.atom_of[n];
    sum[0] += kAtomCoords[a][0];
    sum[1] += kAtomCoords[a][1];
    if (n % 2 == 1) {
      ok = ok && (ex.atom_of[n] == (ex.atom_of[n - 1] ^ 1));
      ok = ok && sum[0] == 0 && sum[1] == 0;
    }
  }
  ex.greedy = ok;
  return ex;
}

}  // namespace greedy
