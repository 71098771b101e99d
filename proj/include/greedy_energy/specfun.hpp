#pragma once

// Special functions on the real rays needed by the energy constants:
// Gamma on (0, ~170], zeta on (1, 3) and on (-2, 0), and the continuous
// energies of the uniform measure on S^d.
//
// Everything is templated on the floating type. The circle tables evaluate
// N^2 * I in long double, where the extra 11 bits are what keeps the
// second-order deficits meaningful at N ~ 2^16.

#include <array>
#include <cmath>
#include <concepts>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "greedy_energy/lambda.hpp"

namespace greedy {
namespace detail {

// B_{2k} / (2k (2k-1)), k = 1..12, as exact rationals.
inline constexpr std::array<std::array<double, 2>, 12> kStirlingCoefficients{{
    {1.0, 12.0},
    {-1.0, 360.0},
    {1.0, 1260.0},
    {-1.0, 1680.0},
    {1.0, 1188.0},
    {-691.0, 360360.0},
    {1.0, 156.0},
    {-3617.0, 122400.0},
    {43867.0, 244188.0},
    {-174611.0, 125400.0},
    {77683.0, 5796.0},
    {-236364091.0, 1506960.0},
}};

// Shift point for the asymptotic series. At z >= 16 the twelfth correction
// is below 1e-25, under long double resolution.
inline constexpr double kStirlingThreshold = 16.0;

template <std::floating_point T>
T log_gamma_asymptotic(T z) {
  const T inv = T(1) / z;
  const T inv2 = inv * inv;
  T correction = 0;
  T power = inv;
  for (const auto& c : kStirlingCoefficients) {
    correction += T(c[0]) / T(c[1]) * power;
    power *= inv2;
  }
  const T half_log_two_pi = T(0.5) * std::log(T(2) * std::numbers::pi_v<T>);
  return (z - T(0.5)) * std::log(z) - z + half_log_two_pi + correction;
}

}  // namespace detail

/// Gamma function for x > 0. Small arguments are shifted upward by the
/// recurrence and finished with the Stirling series; the relative error is a
/// few ulps of T on (0, 50].
template <std::floating_point T = double>
T gamma(T x) {
  if (!(x > 0) || !std::isfinite(x)) {
    throw std::domain_error("gamma: argument must be positive and finite");
  }
  T shift_product = 1;
  T z = x;
  while (z < T(detail::kStirlingThreshold)) {
    shift_product *= z;
    z += 1;
  }
  return std::exp(detail::log_gamma_asymptotic(z)) / shift_product;
}

/// log Gamma(x) for x > 0.
template <std::floating_point T = double>
T log_gamma(T x) {
  if (!(x > 0) || !std::isfinite(x)) {
    throw std::domain_error("log_gamma: argument must be positive and finite");
  }
  T log_shift = 0;
  T z = x;
  while (z < T(detail::kStirlingThreshold)) {
    log_shift += std::log(z);
    z += 1;
  }
  return detail::log_gamma_asymptotic(z) - log_shift;
}

/// Dirichlet eta function for real s > 0, by the Borwein acceleration of the
/// alternating series. The truncation error is below 3 / (3 + sqrt 8)^n.
template <std::floating_point T = double>
T dirichlet_eta(T s, int terms = 48) {
  if (!(s > 0)) throw std::domain_error("dirichlet_eta: requires s > 0");
  // d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), built by ratio.
  const int n = terms;
  T term = T(1) / T(n);  // i = 0 summand divided by n: (n-1)!/n! = 1/n
  T partial = term;
  T result = 0;
  T d_prev = T(n) * partial;  // d_0
  std::array<T, 128> d{};
  if (n >= static_cast<int>(d.size())) throw std::invalid_argument("dirichlet_eta: too many terms");
  d[0] = d_prev;
  for (int i = 1; i <= n; ++i) {
    // ratio of consecutive summands
    term *= T(4) * T(n + i - 1) * T(n - i + 1) / (T(2 * i) * T(2 * i - 1));
    partial += term;
    d[i] = T(n) * partial;
  }
  const T dn = d[n];
  for (int k = 0; k < n; ++k) {
    const T sign = (k % 2 == 0) ? T(1) : T(-1);
    result += sign * (d[k] - dn) / std::pow(T(k + 1), s);
  }
  return -result / dn;
}

/// Riemann zeta for real s > 1 through zeta(s) = eta(s) / (1 - 2^(1-s)).
template <std::floating_point T = double>
T zeta_above_one(T s) {
  if (!(s > 1)) throw std::domain_error("zeta_above_one: requires s > 1");
  const T denominator = -std::expm1(-(s - T(1)) * std::numbers::ln2_v<T>);
  return dirichlet_eta(s) / denominator;
}

/// zeta(1 + e) for e > 0, taking e itself so that 1 + e - 1 never has to be
/// formed near the pole.
template <std::floating_point T = double>
T zeta_one_plus(T e) {
  if (!(e > 0)) throw std::domain_error("zeta_one_plus: requires e > 0");
  return dirichlet_eta(T(1) + e) / -std::expm1(-e * std::numbers::ln2_v<T>);
}

/// zeta(-s) for s > 0 from the functional equation,
///   zeta(-s) = 2^-s pi^(-s-1) sin(-pi s / 2) Gamma(1+s) zeta(1+s).
/// Evaluated in long double at least: the sine and zeta(1+s) factors trade a
/// tiny and a huge value near s = 0.
template <std::floating_point T = double>
T zeta_at_negative(T s) {
  if (!(s > 0) || !(s < 150)) throw std::domain_error("zeta_at_negative: requires 0 < s < 150");
  using W = std::conditional_t<(sizeof(T) < sizeof(long double)), long double, T>;
  const W w = s;
  const W pi = std::numbers::pi_v<W>;
  return static_cast<T>(std::pow(W(2), -w) * std::pow(pi, -w - W(1)) * std::sin(-pi * w / W(2)) *
                        gamma<W>(W(1) + w) * zeta_one_plus<W>(w));
}

/// zeta(-lambda) for 0 < lambda < 2. Strictly negative on the whole interval.
template <std::floating_point T = double>
T zeta_neg(Lambda lambda) {
  detail::require_below_two(lambda, "zeta_neg");
  return zeta_at_negative<T>(T(lambda.value()));
}

namespace detail {

template <std::floating_point T>
T gamma_quotient(T a, T b, T c, T e) {
  // Gamma(a) Gamma(b) / (Gamma(c) Gamma(e)); direct products while every
  // argument stays well inside the double range of Gamma.
  if (a < 150 && b < 150 && c < 150 && e < 150) {
    return gamma<T>(a) * gamma<T>(b) / (gamma<T>(c) * gamma<T>(e));
  }
  return std::exp(log_gamma<T>(a) + log_gamma<T>(b) - log_gamma<T>(c) - log_gamma<T>(e));
}

}  // namespace detail

/// I_lambda(sigma_d): energy of the normalized surface measure on S^d,
///   Gamma((d+1)/2) Gamma(d+l) / (Gamma((d+l+1)/2) Gamma(d+l/2)).
template <std::floating_point T = double>
T continuous_energy(Lambda lambda, int d) {
  detail::require_below_two(lambda, "continuous_energy (use maximal_energy for lambda >= 2)");
  if (d < 1) throw std::domain_error("continuous_energy: dimension must be >= 1");
  const T l = T(lambda.value());
  const T dd = T(d);
  return detail::gamma_quotient<T>((dd + 1) / 2, dd + l, (dd + l + 1) / 2, dd + l / 2);
}

/// Second closed form of the same constant,
///   2^(d+l-1) / sqrt(pi) * Gamma((d+1)/2) Gamma((d+l)/2) / Gamma(d+l/2).
/// Kept separately so the two expressions can be checked against each other.
template <std::floating_point T = double>
T continuous_energy_duplication_form(Lambda lambda, int d) {
  detail::require_below_two(lambda, "continuous_energy_duplication_form");
  if (d < 1) throw std::domain_error("continuous_energy_duplication_form: dimension must be >= 1");
  const T l = T(lambda.value());
  const T dd = T(d);
  const T prefactor = std::pow(T(2), dd + l - 1) / std::sqrt(std::numbers::pi_v<T>);
  if (dd + l < 150) {
    return prefactor * gamma<T>((dd + 1) / 2) * gamma<T>((dd + l) / 2) / gamma<T>(dd + l / 2);
  }
  return prefactor *
         std::exp(log_gamma<T>((dd + 1) / 2) + log_gamma<T>((dd + l) / 2) - log_gamma<T>(dd + l / 2));
}

/// Energy 2^(lambda-1) of any maximal distribution when lambda >= 2.
template <std::floating_point T = double>
T maximal_energy(Lambda lambda) {
  if (lambda.value() < 2.0) {
    throw std::domain_error("maximal_energy: requires lambda >= 2, got " +
                            std::to_string(lambda.value()));
  }
  return std::pow(T(2), T(lambda.value()) - T(1));
}

/// Limit of the normalized deficit of equally spaced points,
/// (2 pi)^lambda * 2 zeta(-lambda). Negative on (0, 2).
template <std::floating_point T = double>
T second_order_constant(Lambda lambda) {
  detail::require_below_two(lambda, "second_order_constant");
  const T l = T(lambda.value());
  return std::pow(T(2) * std::numbers::pi_v<T>, l) * T(2) * zeta_neg<T>(lambda);
}

/// Energy of sigma_1 in long double; shared by the circle tables.
inline long double circle_energy_ld(Lambda lambda) {
  if (lambda.value() < 2.0) return continuous_energy<long double>(lambda, 1);
  return maximal_energy<long double>(lambda);
}

}  // namespace greedy
