#pragma once

// Exact greedy lambda-energy machinery on the unit circle.
//
// For 0 < lambda < 2 every greedy sequence started at a_0 = 1 visits dyadic
// angles only, its 2^m-prefixes are the 2^m-th roots of unity, and the energy
// of any prefix is a short combination of energies of roots of unity indexed
// by the binary digits of N. This header provides the canonical sequence
// (base-2 bit reversal), the roots-of-unity quantities L(N) and U(N), and the
// binary formulas built on them.

#include <algorithm>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "greedy_energy/binary.hpp"
#include "greedy_energy/lambda.hpp"
#include "greedy_energy/specfun.hpp"
#include "greedy_energy/summation.hpp"

namespace greedy {

/// A point exp(2 pi i * numerator / 2^level) with the fraction fully reduced:
/// numerator is odd, or the angle is zero with level 0.
class DyadicAngle {
 public:
  static constexpr int kMaxLevel = 62;

  constexpr DyadicAngle() = default;

  DyadicAngle(std::uint64_t numerator, int level) : numerator_(numerator), level_(level) {
    if (level < 0 || level > kMaxLevel) throw std::domain_error("DyadicAngle: level out of range");
    if (numerator >= (std::uint64_t{1} << level)) {
      throw std::domain_error("DyadicAngle: numerator must be < 2^level");
    }
    while (numerator_ != 0 && (numerator_ & 1u) == 0) {
      numerator_ >>= 1;
      --level_;
    }
    if (numerator_ == 0) level_ = 0;
  }

  std::uint64_t numerator() const noexcept { return numerator_; }
  int level() const noexcept { return level_; }
  std::uint64_t denominator() const noexcept { return std::uint64_t{1} << level_; }

  /// Angle as a fraction of a full turn, in [0, 1).
  double turns() const noexcept { return std::ldexp(static_cast<double>(numerator_), -level_); }

  /// The antipodal point, half a turn away.
  DyadicAngle antipode() const {
    const int level = level_ == 0 ? 1 : level_;
    const std::uint64_t scaled = numerator_ << (level - level_);
    const std::uint64_t half = std::uint64_t{1} << (level - 1);
    const std::uint64_t full = std::uint64_t{1} << level;
    return DyadicAngle((scaled + half) % full, level);
  }

  /// "0" or "numerator/denominator".
  std::string to_string() const {
    if (numerator_ == 0) return "0";
    return std::to_string(numerator_) + "/" + std::to_string(denominator());
  }

  friend bool operator==(const DyadicAngle&, const DyadicAngle&) = default;

 private:
  std::uint64_t numerator_ = 0;
  int level_ = 0;
};

/// Chord length 2|sin(pi dt)|; the turn difference dt is formed exactly in
/// integers and folded into [0, 1/2] before the single sine evaluation.
template <std::floating_point T = double>
T chord(const DyadicAngle& a, const DyadicAngle& b) {
  const int level = std::max(a.level(), b.level());
  const std::uint64_t na = a.numerator() << (level - a.level());
  const std::uint64_t nb = b.numerator() << (level - b.level());
  std::uint64_t diff = na > nb ? na - nb : nb - na;
  if (level > 0 && diff > (std::uint64_t{1} << (level - 1))) diff = (std::uint64_t{1} << level) - diff;
  return T(2) * std::sin(std::numbers::pi_v<T> * std::ldexp(T(diff), -level));
}

/// a_n of the canonical greedy sequence: the base-2 van der Corput point,
/// i.e. the bits of n reversed behind the binary point.
inline DyadicAngle canonical_point(std::uint64_t n) {
  if (n == 0) return {};
  const int width = std::bit_width(n);
  std::uint64_t reversed = 0;
  for (int i = 0; i < width; ++i) {
    if ((n >> i) & 1u) reversed |= std::uint64_t{1} << (width - 1 - i);
  }
  return DyadicAngle(reversed, width);
}

/// First `count` points of the canonical sequence. Among maximizers of the
/// potential it always takes the one with the smallest positive turn.
inline std::vector<DyadicAngle> canonical_sequence(std::size_t count) {
  if (count < 1) throw std::domain_error("canonical_sequence: count must be >= 1");
  std::vector<DyadicAngle> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) out.push_back(canonical_point(n));
  return out;
}

/// L(N): energy of the N-th roots of unity, N 2^l sum_{k=1}^{N-1} sin^l(pi k / N).
/// L(1) = 0.
template <std::floating_point T = double>
T roots_energy(Lambda lambda, std::uint64_t n) {
  detail::require_at_most_two(lambda, "roots_energy");
  if (n < 1) throw std::domain_error("roots_energy: N must be >= 1");
  if (n == 1) return T(0);
  const T l = T(lambda.value());
  const T pi = std::numbers::pi_v<T>;
  const T nn = T(n);
  const std::uint64_t half = (n - 1) / 2;
  T s = T(2) * pairwise_sum<T>(1, half + 1, [&](std::size_t k) {
          return std::pow(std::sin(pi * T(k) / nn), l);
        });
  if (n % 2 == 0) s += T(1);
  return nn * std::pow(T(2), l) * s;
}

/// U(N): potential of the N-th roots of unity at the midpoint of an arc,
/// 2^l sum_{k=0}^{N-1} sin^l((2k+1) pi / (2N)), summed directly.
template <std::floating_point T = double>
T midpoint_potential(Lambda lambda, std::uint64_t n) {
  detail::require_below_two(lambda, "midpoint_potential");
  if (n < 1) throw std::domain_error("midpoint_potential: N must be >= 1");
  const T l = T(lambda.value());
  const T pi = std::numbers::pi_v<T>;
  const T two_n = T(2) * T(n);
  T s = T(2) * pairwise_sum<T>(0, n / 2, [&](std::size_t k) {
          return std::pow(std::sin(pi * T(2 * k + 1) / two_n), l);
        });
  if (n % 2 == 1) s += T(1);
  return std::pow(T(2), l) * s;
}

/// U(N) through the roots-of-unity energies, L(2N)/(2N) - L(N)/N.
template <std::floating_point T = double>
T midpoint_potential_via_roots(Lambda lambda, std::uint64_t n) {
  detail::require_below_two(lambda, "midpoint_potential_via_roots");
  if (n < 1) throw std::domain_error("midpoint_potential_via_roots: N must be >= 1");
  return roots_energy<T>(lambda, 2 * n) / T(2 * n) - roots_energy<T>(lambda, n) / T(n);
}

/// R(N) = (L(N) - N^2 I) / N^(1-l), evaluated in long double. Negative for
/// every N; tends to (2 pi)^l 2 zeta(-l).
inline double r_lambda(Lambda lambda, std::uint64_t n) {
  detail::require_below_two(lambda, "r_lambda");
  if (n < 1) throw std::domain_error("r_lambda: N must be >= 1");
  using T = long double;
  const T nn = T(n);
  const T deficit = roots_energy<T>(lambda, n) - nn * nn * circle_energy_ld(lambda);
  return static_cast<double>(deficit / std::pow(nn, T(1) - T(lambda.value())));
}

/// Normalization of the second-order deficit: N^(1-l), log N, or 1.
inline double kappa(Lambda lambda, std::uint64_t n) {
  const double l = lambda.value();
  if (l < 1.0) return std::pow(static_cast<double>(n), 1.0 - l);
  if (l == 1.0) return std::log(static_cast<double>(n));
  return 1.0;
}

namespace detail {

/// Coefficients c_j of (sin y / y)^l = sum_j c_j y^{2j}, from
/// log(sin y / y) = sum_n (-1)^n B_{2n} 4^n y^{2n} / (2n (2n)!).
template <std::floating_point T>
std::vector<T> sinc_power_coefficients(T l, int terms) {
  // (-1)^n B_{2n} 4^n / (2n (2n)!), n = 1..8
  static constexpr long double kLogSinc[] = {
      -1.0L / 6,
      -1.0L / 180,
      -1.0L / 2835,
      -1.0L / 37800,
      -1.0L / 467775,
      -691.0L / 3831077250,
      -2.0L / 127702575,
      -3617.0L / 2605132530000,
  };
  if (terms < 1 || terms > 9) throw std::domain_error("sinc_power_coefficients: 1 <= terms <= 9");
  std::vector<T> c(terms, T(0));
  c[0] = 1;
  for (int m = 1; m < terms; ++m) {
    T acc = 0;
    for (int n = 1; n <= m; ++n) acc += T(n) * T(kLogSinc[n - 1]) * c[m - n];
    c[m] = l * acc / T(m);
  }
  return c;
}

}  // namespace detail

/// L(N) - N^2 I from the Euler-Maclaurin expansion for the |x|^l singularity,
///   N 2^l sum_j 2 zeta(-l-2j) c_j (pi / N)^{l+2j}.
/// The terms shrink roughly like (2j)! / (2 pi N)^{2j}; for N >= 256 the six
/// default terms are exact to working precision, and no N^2-sized
/// cancellation occurs.
template <std::floating_point T = long double>
T roots_deficit_expansion(Lambda lambda, std::uint64_t n, int terms = 6) {
  detail::require_below_two(lambda, "roots_deficit_expansion");
  if (n < 1) throw std::domain_error("roots_deficit_expansion: N must be >= 1");
  const T l = T(lambda.value());
  const T x = std::numbers::pi_v<T> / T(n);
  const auto c = detail::sinc_power_coefficients<T>(l, terms);
  T sum = 0;
  for (int j = terms - 1; j >= 0; --j) {
    sum += T(2) * zeta_at_negative<T>(l + T(2 * j)) * c[j] * std::pow(x, l + T(2 * j));
  }
  return T(n) * std::pow(T(2), l) * sum;
}

/// Roots-of-unity quantities at powers of two, cached up to 2^max_level, and
/// the binary formulas for the greedy sequence evaluated from them.
///
/// Only the deficits D(2^k) = L(2^k) - 4^k I are stored; everything else is
/// rebuilt from them with the binary weights, so second-order values never
/// subtract two numbers of size N^2.
template <std::floating_point T = long double>
class DyadicEnergyTable {
 public:
  DyadicEnergyTable(Lambda lambda, int max_level) : lambda_(lambda), max_level_(max_level) {
    detail::require_at_most_two(lambda, "DyadicEnergyTable");
    if (max_level < 0 || max_level > 40) throw std::domain_error("DyadicEnergyTable: max_level out of range");
    continuous_ = lambda.value() < 2.0 ? continuous_energy<T>(lambda, 1) : maximal_energy<T>(lambda);
    deficit_.resize(max_level + 2);
    for (int k = 0; k <= max_level + 1; ++k) {
      const std::uint64_t n = std::uint64_t{1} << k;
      if (k < kDirectLevels) {
        deficit_[k] = roots_energy<T>(lambda, n) - std::ldexp(continuous_, 2 * k);
      } else if (lambda.value() == 2.0) {
        deficit_[k] = 0;  // L(N) = 2 N^2 = N^2 I for N >= 2
      } else {
        deficit_[k] = roots_deficit_expansion<T>(lambda, n);
      }
    }
  }

  /// Levels below this use direct sums over the roots; above it the
  /// expansion, which avoids cancelling two numbers of size 4^k.
  static constexpr int kDirectLevels = 8;

  /// Smallest max_level that covers every N <= n_max.
  static int required_level(std::uint64_t n_max) { return static_cast<int>(std::bit_width(n_max)); }

  Lambda lambda() const noexcept { return lambda_; }
  int max_level() const noexcept { return max_level_; }
  T continuous() const noexcept { return continuous_; }

  T deficit(int k) const { return deficit_.at(check_level(k)); }
  T roots(int k) const { return deficit(k) + std::ldexp(continuous_, 2 * k); }
  /// U(2^k) - 2^k I = D(2^{k+1}) / 2^{k+1} - D(2^k) / 2^k.
  T excess(int k) const {
    detail::require_below_two(lambda_, "excess");
    return std::ldexp(deficit_.at(check_level(k) + 1), -(k + 1)) - std::ldexp(deficit_.at(k), -k);
  }
  T midpoint(int k) const { return excess(k) + std::ldexp(continuous_, k); }

  /// H(alpha_N) from the binary representation of N (N >= 2).
  T energy(std::uint64_t n) const {
    return combine(n, [this](int k) { return roots(k); });
  }

  /// H(alpha_N) - N^2 I, via the same weights applied to the power-of-two
  /// deficits (the weights reproduce N^2 exactly from the powers of four).
  T energy_deficit(std::uint64_t n) const {
    return combine(n, [this](int k) { return deficit(k); });
  }

  /// U_N(a_N) = sum_k U(2^{n_k}).
  T extremal_potential(std::uint64_t n) const {
    return over_digits(n, [this](int k) { return midpoint(k); });
  }

  /// U_N(a_N) - N I.
  T potential_excess(std::uint64_t n) const {
    return over_digits(n, [this](int k) { return excess(k); });
  }

 private:
  int check_level(int k) const {
    if (k < 0 || k > max_level_) throw std::out_of_range("DyadicEnergyTable: level out of range");
    return k;
  }

  void check_covers(std::uint64_t n, int extra) const {
    if (static_cast<int>(std::bit_width(n)) - 1 + extra > max_level_) {
      throw std::out_of_range("DyadicEnergyTable: N exceeds the tabulated range");
    }
  }

  template <typename F>
  T combine(std::uint64_t n, F&& at_level) const {
    if (n < 2) throw std::domain_error("energy: N must be >= 2");
    const BinaryRep rep(n);
    check_covers(n, rep.length() > 1 ? 1 : 0);
    const auto w = binary_weights(rep);
    const auto e = rep.exponents();
    T total = 0;
    for (int k = 0; k < rep.length(); ++k) {
      if (w.cross[k] != 0.0) total += T(w.cross[k]) * at_level(e[k] + 1);
      total += T(w.self[k]) * at_level(e[k]);
    }
    return total;
  }

  template <typename F>
  T over_digits(std::uint64_t n, F&& at_level) const {
    detail::require_below_two(lambda_, "extremal_potential");
    if (n < 1) throw std::domain_error("extremal_potential: N must be >= 1");
    check_covers(n, 0);
    T total = 0;
    const BinaryRep rep(n);
    for (int e : rep.exponents()) total += at_level(e);
    return total;
  }

  Lambda lambda_;
  int max_level_;
  T continuous_{};
  std::vector<T> deficit_;  // L(2^k) - 4^k I for k <= max_level + 1
};

/// H(alpha_N) of the greedy sequence from the binary formula. Accepts
/// lambda = 2 as a boundary case.
inline double greedy_energy_exact(Lambda lambda, std::uint64_t n) {
  detail::require_at_most_two(lambda, "greedy_energy_exact");
  if (n < 2) throw std::domain_error("greedy_energy_exact: N must be >= 2");
  const DyadicEnergyTable<long double> table(lambda, DyadicEnergyTable<>::required_level(n));
  return static_cast<double>(table.energy(n));
}

/// U_N(a_N) = sum over binary digits of U(2^{n_k}).
inline double greedy_extremal_potential(Lambda lambda, std::uint64_t n) {
  detail::require_below_two(lambda, "greedy_extremal_potential");
  if (n < 1) throw std::domain_error("greedy_extremal_potential: N must be >= 1");
  const DyadicEnergyTable<long double> table(lambda, DyadicEnergyTable<>::required_level(n));
  return static_cast<double>(table.extremal_potential(n));
}

/// Energy of an arbitrary dyadic configuration by direct pairwise summation.
template <std::floating_point T = double>
T direct_energy(std::span<const DyadicAngle> points, Lambda lambda) {
  const T l = T(lambda.value());
  T s = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) s += std::pow(chord<T>(points[i], points[j]), l);
  }
  return T(2) * s;
}

/// sum_k |x - p_k|^lambda over a dyadic configuration.
template <std::floating_point T = double>
T direct_potential(std::span<const DyadicAngle> points, Lambda lambda, const DyadicAngle& x) {
  const T l = T(lambda.value());
  T s = 0;
  for (const auto& p : points) s += std::pow(chord<T>(p, x), l);
  return s;
}

/// One row of the second-order series: the point a_n, U_n(a_n), H(alpha_n),
/// the raw deficit H - n^2 I, its normalization by kappa(n), and U_n(a_n) - n I.
struct SequenceRecord {
  std::uint64_t index = 0;
  DyadicAngle angle;
  double potential_value = 0.0;
  double energy = 0.0;
  double energy_deficit = 0.0;
  double second_order = 0.0;
  double potential_excess = 0.0;
};

/// Rows for 2 <= n <= n_max.
inline std::vector<SequenceRecord> second_order_series(Lambda lambda, std::uint64_t n_max) {
  detail::require_below_two(lambda, "second_order_series");
  if (n_max < 2) throw std::domain_error("second_order_series: N_max must be >= 2");
  const DyadicEnergyTable<long double> table(lambda, DyadicEnergyTable<>::required_level(n_max));
  std::vector<SequenceRecord> rows;
  rows.reserve(n_max - 1);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    SequenceRecord r;
    r.index = n;
    r.angle = canonical_point(n);
    r.potential_value = static_cast<double>(table.extremal_potential(n));
    r.energy = static_cast<double>(table.energy(n));
    const long double deficit = table.energy_deficit(n);
    r.energy_deficit = static_cast<double>(deficit);
    r.second_order = static_cast<double>(deficit / static_cast<long double>(kappa(lambda, n)));
    r.potential_excess = static_cast<double>(table.potential_excess(n));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace greedy
