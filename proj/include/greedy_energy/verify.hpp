#pragma once

// Invariant suites behind `greedy-energy verify`. Every check records the
// measured quantity, what it is compared against and the tolerance used.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "greedy_energy/asymptotics.hpp"
#include "greedy_energy/binary.hpp"
#include "greedy_energy/circle_exact.hpp"
#include "greedy_energy/greedy_numeric.hpp"
#include "greedy_energy/special_cases.hpp"
#include "greedy_energy/specfun.hpp"

namespace greedy::verify {

enum class Profile { quick, full };

struct Check {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"symmetry", "formulas", "bounds", "limits", "special"};
  return names;
}

namespace detail {

struct Recorder {
  std::string suite;
  std::vector<Check>& out;

  // |measured - expected| <= tolerance
  void near(const std::string& name, double measured, double expected, double tolerance) {
    out.push_back({suite, name, measured, expected, tolerance, std::abs(measured - expected) <= tolerance});
  }
  // measured <= bound
  void at_most(const std::string& name, double measured, double bound) {
    out.push_back({suite, name, measured, bound, 0.0, measured <= bound});
  }
  // measured >= bound
  void at_least(const std::string& name, double measured, double bound) {
    out.push_back({suite, name, measured, bound, 0.0, measured >= bound});
  }
};

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

inline double max_antipodal_defect(const std::vector<SpherePoint>& pts) {
  double worst = 0.0;
  for (std::size_t k = 1; k < pts.size(); k += 2) {
    worst = std::max(worst, (pts[k].coords() + pts[k - 1].coords()).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline void symmetry(Recorder& r, Profile p) {
  const std::size_t n = p == Profile::quick ? 16 : 64;
  const std::vector<int> dims = p == Profile::quick ? std::vector<int>{1, 2} : std::vector<int>{1, 2, 3};
  for (int d : dims) {
    for (double l : {0.5, 1.5, 2.0, 3.0}) {
      const auto pts = generate(GreedyConfig(d, Lambda(l), n));
      r.near("a_{2k+1} = -a_{2k}, d=" + std::to_string(d) + " lambda=" + fmt(l), max_antipodal_defect(pts), 0.0, 0.0);
    }
  }
  for (double l : {0.5, 1.5}) {
    const auto pts = generate(GreedyConfig(1, Lambda(l), n));
    const auto exact = canonical_sequence(n);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto e = SpherePoint::from_angle(2.0 * std::numbers::pi * exact[i].turns());
      worst = std::max(worst, chord_distance(pts[i], e));
    }
    r.near("numeric S^1 sequence = bit reversal, lambda=" + fmt(l), worst, 0.0, 1e-8);
  }
}

inline void formulas(Recorder& r, Profile p) {
  const std::uint64_t n_max = p == Profile::quick ? 256 : 512;
  const auto seq = canonical_sequence(n_max + 1);
  for (double l : {0.3, 0.5, 1.0, 1.5, 1.9}) {
    const Lambda lambda(l);
    const DyadicEnergyTable<long double> table(lambda, DyadicEnergyTable<>::required_level(n_max + 1));
    double h_direct = 0.0;
    double worst_h = 0.0;
    double worst_u = 0.0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      const double u_direct = direct_potential<double>(std::span(seq).first(n), lambda, seq[n]);
      // H(alpha_n) = H(alpha_{n-1}) + 2 U_{n-1}(a_{n-1})
      h_direct += 2.0 * direct_potential<double>(std::span(seq).first(n - 1), lambda, seq[n - 1]);
      if (n >= 2) {
        const double h = static_cast<double>(table.energy(n));
        worst_h = std::max(worst_h, std::abs(h - h_direct) / h_direct);
      }
      const double u = static_cast<double>(table.extremal_potential(n));
      worst_u = std::max(worst_u, std::abs(u - u_direct) / u_direct);
    }
    r.near("binary energy formula vs pairwise sum, lambda=" + fmt(l), worst_h, 0.0, 1e-10);
    r.near("binary potential formula vs direct sum, lambda=" + fmt(l), worst_u, 0.0, 1e-10);

    if (l < 2.0) {
      double worst_mid = 0.0;
      for (std::uint64_t n = 1; n <= (p == Profile::quick ? 64u : 1024u); ++n) {
        const double a = midpoint_potential(lambda, n);
        const double b = midpoint_potential_via_roots(lambda, n);
        worst_mid = std::max(worst_mid, std::abs(a - b) / a);
      }
      r.near("U(N) direct vs L(2N)/2N - L(N)/N, lambda=" + fmt(l), worst_mid, 0.0, 1e-12);
    }
  }
  const std::uint64_t sq_max = p == Profile::quick ? 10000 : 100000;
  std::uint64_t failures = 0;
  for (std::uint64_t n = 2; n <= sq_max; ++n) failures += square_identity_check(n) ? 0 : 1;
  r.near("binary square identity, N <= " + std::to_string(sq_max), static_cast<double>(failures), 0.0, 0.0);
}

inline void bounds(Recorder& r, Profile p) {
  const std::uint64_t n_pot = p == Profile::quick ? 500 : 2000;
  const std::uint64_t n_energy = p == Profile::quick ? 1024 : 4096;
  for (double l : {0.01, 0.1, 0.3, 0.7, 1.0, 1.3, 1.5, 1.9}) {
    const Lambda lambda(l);
    const DyadicEnergyTable<long double> table(lambda, DyadicEnergyTable<>::required_level(n_energy));
    const double i = static_cast<double>(table.continuous());
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::uint64_t n = 1; n <= n_pot; ++n) {
      const double e = static_cast<double>(table.potential_excess(n));
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    r.at_least("min U_N(a_N) - N I > 0, lambda=" + fmt(l), lo, std::numeric_limits<double>::min());
    r.at_most("max U_N(a_N) - N I < I, lambda=" + fmt(l), hi, std::nextafter(i, 0.0));

    double worst_upper = -std::numeric_limits<double>::infinity();
    double worst_lower = std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 2; n <= n_energy; ++n) {
      const long double deficit = table.energy_deficit(n);
      worst_upper = std::max(worst_upper, static_cast<double>(deficit));
      worst_lower = std::min(worst_lower, static_cast<double>(deficit + static_cast<long double>(n) * table.continuous()));
    }
    r.at_most("H - N^2 I < 0, lambda=" + fmt(l), worst_upper, -std::numeric_limits<double>::min());
    r.at_least("H - N(N-1) I > 0, lambda=" + fmt(l), worst_lower, std::numeric_limits<double>::min());

    double worst_jump = 0.0;
    double worst_order = -std::numeric_limits<double>::infinity();
    const auto seq = canonical_sequence(514);
    const double two_l = std::pow(2.0, l);
    for (std::uint64_t n = 1; n <= 512; ++n) {
      const double un = static_cast<double>(table.extremal_potential(n));
      const double un1 = static_cast<double>(table.extremal_potential(n + 1));
      if (n % 2 == 0) worst_jump = std::max(worst_jump, std::abs(un1 - un - two_l) / un1);
      const double step = std::pow(chord<double>(seq[n + 1], seq[n]), l);
      worst_order = std::max(worst_order, std::max(un - un1, un1 - un - step) / un);
    }
    r.near("U_{2k+1}(a_{2k+1}) = U_{2k}(a_{2k}) + 2^lambda, lambda=" + fmt(l), worst_jump, 0.0, 1e-12);
    r.at_most("U_n(a_n) <= U_{n+1}(a_{n+1}) <= U_n(a_n) + |a_{n+1}-a_n|^lambda, lambda=" + fmt(l), worst_order, 1e-13);
  }
  const std::uint64_t n_r = p == Profile::quick ? 1024 : 4096;
  for (double l : {0.25, 0.5, 1.0, 1.5, 1.75}) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::uint64_t n = 1; n <= n_r; ++n) worst = std::max(worst, r_lambda(Lambda(l), n));
    r.at_most("R(N) < 0 for N <= " + std::to_string(n_r) + ", lambda=" + fmt(l), worst, -std::numeric_limits<double>::min());
  }
  for (int d : {1, 2}) {
    for (double l : {0.5, 1.5}) {
      const Lambda lambda(l);
      const auto pts = generate(GreedyConfig(d, lambda, p == Profile::quick ? 32 : 128));
      const auto pot = extremal_potentials(pts, lambda);
      const double i = continuous_energy(lambda, d);
      double slack_low = std::numeric_limits<double>::infinity();
      double slack_high = std::numeric_limits<double>::infinity();
      double h = 0.0;
      double sandwich = std::numeric_limits<double>::infinity();
      for (std::size_t n = 1; n < pts.size(); ++n) {
        slack_low = std::min(slack_low, pot[n] - n * i);
        slack_high = std::min(slack_high, n * std::pow(2.0, l) - pot[n]);
        h += 2.0 * pot[n];
        const double nn = static_cast<double>(n + 1);
        sandwich = std::min({sandwich, h - nn * (nn - 1) * i, nn * nn * i - h});
      }
      const std::string tag = ", d=" + std::to_string(d) + " lambda=" + fmt(l);
      r.at_least("numeric n I < U_n(a_n)" + tag, slack_low, std::numeric_limits<double>::min());
      r.at_least("numeric U_n(a_n) <= n 2^lambda" + tag, slack_high, 0.0);
      r.at_least("numeric N(N-1) I < H < N^2 I" + tag, sandwich, std::numeric_limits<double>::min());
    }
  }
}

inline void limits(Recorder& r, Profile p) {
  const std::uint64_t big = std::uint64_t{1} << 16;
  for (double l : {0.5, 1.0, 1.5}) {
    r.near("R(2^16) -> (2 pi)^l 2 zeta(-l), lambda=" + fmt(l), r_lambda(Lambda(l), big),
           second_order_constant(Lambda(l)), 1e-4);
  }
  const int n = p == Profile::quick ? 12 : 14;
  const std::uint64_t pow2 = std::uint64_t{1} << n;
  for (double l : {1.0, 1.3, 1.9}) {
    const DyadicEnergyTable<long double> t(Lambda(l), n + 1);
    const double i = static_cast<double>(t.continuous());
    r.near("U_N(a_N) - N I at N = 2^" + std::to_string(n) + ", lambda=" + fmt(l),
           static_cast<double>(t.potential_excess(pow2)), 0.0, 1e-3);
    r.near("U_N(a_N) - N I at N = 2^" + std::to_string(n) + " - 1, lambda=" + fmt(l),
           static_cast<double>(t.potential_excess(pow2 - 1)), i, 1e-3);
  }
  for (double l : {0.25, 0.5, 0.75}) {
    const Lambda lambda(l);
    const DyadicEnergyTable<long double> t(lambda, n + 1);
    const double c = second_order_constant(lambda);
    const double normalized = static_cast<double>(t.energy_deficit(pow2)) / kappa(lambda, pow2);
    r.near("limsup witness N = 2^" + std::to_string(n) + ", lambda=" + fmt(l), normalized, c, 1e-3);
    const std::uint64_t m3 = 3 * (pow2 / 4);
    const double g3 = g_function(theta_from_odd(3, 2), l);
    r.near("M=3 witness N = 3*2^" + std::to_string(n - 2) + ", lambda=" + fmt(l),
           static_cast<double>(t.energy_deficit(m3)) / kappa(lambda, m3), g3 * c, 1e-2);
  }
  for (double l : {1.25, 1.5, 1.75}) {
    const Lambda lambda(l);
    const double s = s_lambda(lambda, 1e-8).value;
    const DyadicEnergyTable<long double> t(lambda, n + 1);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::uint64_t k = 2; k <= pow2; ++k) {
      const double v = static_cast<double>(t.energy_deficit(k));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    r.at_least("min H - N^2 I >= s_lambda - 1e-6, lambda=" + fmt(l), lo, s - 1e-6);
    r.at_most("max H - N^2 I <= 0, lambda=" + fmt(l), hi, 0.0);
    double rise = -std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::infinity();
    for (int q = 2; subsequence_index(2, q) <= pow2; ++q) {
      const double v = static_cast<double>(t.energy_deficit(subsequence_index(2, q)));
      rise = std::max(rise, v - prev);
      prev = v;
    }
    r.at_most("H - N^2 I decreasing along (4^p - 1)/3, lambda=" + fmt(l), rise, 0.0);
  }
  {
    const Lambda one(1.0);
    const DyadicEnergyTable<long double> t(one, n + 1);
    double hi = -std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 64; k <= pow2; ++k) {
      hi = std::max(hi, static_cast<double>(t.energy_deficit(k)) / std::log(static_cast<double>(k)));
    }
    r.at_most("lambda=1: (H - N^2 I) / log N <= 0.02 for N >= 64", hi, 0.02);
  }
  {
    int arg = 1;
    for (int q = 2; q <= 64; ++q) {
      if (subsequence_limit_lambda1(q) < subsequence_limit_lambda1(arg)) arg = q;
    }
    r.near("argmin_r of the lambda=1 subsequence limits, r <= 64", arg, 2, 0.0);
    r.near("lambda=1 minimal subsequence limit", subsequence_limit_lambda1(2),
           -std::numbers::pi / (9.0 * std::numbers::ln2), 1e-15);
  }
  for (int i = 1; i <= 9; ++i) {
    const double l = 0.1 * i;
    r.at_least("g_bar > 1 from M=3, lambda=" + fmt(l), g_function(theta_from_odd(3, 2), l),
               std::nextafter(1.0, 2.0));
  }
}

inline void special(Recorder& r, Profile p) {
  const Lambda two(2.0);
  double worst = 0.0;
  for (std::uint64_t n = 1; n <= 100; ++n) {
    for (std::uint64_t big_n : {2 * n, 2 * n + 1}) {
      const double exact = static_cast<double>(lambda2_energy(big_n));
      worst = std::max(worst, std::abs(greedy_energy_exact(two, big_n) - exact) / exact);
    }
  }
  r.near("lambda=2 binary formula = 8n^2, 8(n^2+n), n <= 100", worst, 0.0, 1e-12);

  const std::size_t n_pts = p == Profile::quick ? 20 : 50;
  {
    const auto pts = generate(GreedyConfig(2, two, n_pts));
    const auto pot = extremal_potentials(pts, two);
    double w_pot = 0.0;
    for (std::size_t k = 1; k < pts.size(); ++k) {
      w_pot = std::max(w_pot, std::abs(pot[k] - static_cast<double>(lambda2_extremal_potential(k))));
    }
    r.near("lambda=2 U_n(a_n) = 4 ceil(n/2) on S^2", w_pot, 0.0, 1e-10);
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(3);
    for (const auto& a : pts) sum += a.coords();
    double w_id = 0.0;
    for (std::uint64_t j = 1; j <= 100; ++j) {
      const auto x = quasi_uniform_point(2, j);
      const double rhs = 2.0 * static_cast<double>(pts.size()) - 2.0 * x.coords().dot(sum);
      w_id = std::max(w_id, std::abs(potential(pts, two, x) - rhs));
    }
    r.near("lambda=2 U_n(x) = 2n - 2<x, sum a_k>", w_id, 0.0, 1e-10);
  }
  for (double l : {2.5, 3.0}) {
    const Lambda lambda(l);
    GreedyConfig cfg(2, lambda, n_pts);
    const auto pts = generate(cfg);
    double dev = 0.0;
    for (const auto& a : pts) {
      dev = std::max(dev, std::min(chord_distance(a, pts[0]), chord_distance(a, -pts[0])));
    }
    r.at_most("collapse onto {a_0, -a_0} on S^2, lambda=" + fmt(l), dev, cfg.refine_tolerance);
    double worst_h = 0.0;
    for (std::size_t n = 2; n <= pts.size(); n += 2) {
      const double h = energy(std::span(pts).first(n), lambda);
      const double exact = collapse_energy(lambda, n);
      worst_h = std::max(worst_h, std::abs(h - exact) / exact);
    }
    r.near("collapse energy 2^(l+1) n^2, lambda=" + fmt(l), worst_h, 0.0, 1e-10);
  }
  const auto ex = divergent_lambda2_example(10);
  using Q = boost::rational<std::int64_t>;
  std::uint64_t mismatches = 0;
  for (const auto& s : ex.snapshots) {
    const bool power = (s.n & (s.n - 1)) == 0;
    const std::array<Q, 4> want = power ? std::array<Q, 4>{Q(1, 4), Q(1, 4), Q(1, 4), Q(1, 4)}
                                        : std::array<Q, 4>{Q(1, 3), Q(1, 3), Q(1, 6), Q(1, 6)};
    if (s.weights != want) ++mismatches;
  }
  r.near("divergent lambda=2 weights, m <= 10", static_cast<double>(mismatches), 0.0, 0.0);
  r.near("divergent lambda=2 sequence is greedy", ex.greedy ? 1.0 : 0.0, 1.0, 0.0);
}

}  // namespace detail

/// Runs one suite, or all of them for "all". Throws std::invalid_argument for
/// unknown names.
inline std::vector<Check> run(const std::string& suite, Profile profile) {
  std::vector<Check> out;
  auto one = [&](const std::string& name) {
    detail::Recorder rec{name, out};
    if (name == "symmetry") detail::symmetry(rec, profile);
    else if (name == "formulas") detail::formulas(rec, profile);
    else if (name == "bounds") detail::bounds(rec, profile);
    else if (name == "limits") detail::limits(rec, profile);
    else if (name == "special") detail::special(rec, profile);
    else throw std::invalid_argument("unknown suite: " + name);
  };
  if (suite == "all") {
    for (const auto& s : suite_names()) one(s);
  } else {
    one(suite);
  }
  return out;
}

}  // namespace greedy::verify
