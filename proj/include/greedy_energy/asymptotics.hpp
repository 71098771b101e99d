#pragma once

// Second-order limits of H(alpha_N) - N^2 I on the circle.
//
// For 0 < lambda < 1 the normalized deficit has limit points
// G(theta; lambda) * C_lambda, where theta ranges over limit ratios
// 2^{n_k} / N of binary digits and C_lambda = (2 pi)^lambda 2 zeta(-lambda).
// Every such ratio vector with finitely many nonzero entries is described by
// an odd integer M, so sup G is approached by enumerating odd M.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "greedy_energy/binary.hpp"
#include "greedy_energy/circle_exact.hpp"
#include "greedy_energy/lambda.hpp"
#include "greedy_energy/special_cases.hpp"
#include "greedy_energy/specfun.hpp"

namespace greedy {

/// (2^{t_1}/M, ..., 2^{t_{r-1}}/M, 1/M, 0, ..., 0) of length p.
struct ThetaVector {
  std::uint64_t generator = 1;
  std::vector<double> thetas;

  int p() const noexcept { return static_cast<int>(thetas.size()); }
};

inline ThetaVector theta_from_odd(std::uint64_t m, int p) {
  if (m < 1 || m % 2 == 0) throw std::domain_error("theta_from_odd: M must be a positive odd integer");
  if (std::popcount(m) > p) throw std::domain_error("theta_from_odd: M has more than p binary digits");
  ThetaVector v;
  v.generator = m;
  v.thetas.assign(p, 0.0);
  const double mm = static_cast<double>(m);
  int i = 0;
  const BinaryRep rep(m);
  for (int e : rep.exponents()) v.thetas[i++] = std::ldexp(1.0, e) / mm;
  return v;
}

/// G(theta; l) = sum_k theta_k^-l (2 (2^-l - 1) sum_{j>k} theta_j + theta_k),
/// with the k-th term read as zero when theta_k = 0.
inline double g_function(const ThetaVector& theta, double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw std::domain_error("g_function: requires 0 <= lambda < 1");
  const double c = 2.0 * (std::pow(2.0, -lambda) - 1.0);
  const auto& t = theta.thetas;
  double tail = 0.0;
  double g = 0.0;
  for (int k = theta.p() - 1; k >= 0; --k) {
    if (t[k] > 0.0) g += std::pow(t[k], -lambda) * (c * tail + t[k]);
    tail += t[k];
  }
  return g;
}

/// dG/dlambda at fixed theta.
inline double g_function_derivative(const ThetaVector& theta, double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw std::domain_error("g_function_derivative: requires 0 <= lambda < 1");
  const double two_l = std::pow(2.0, -lambda);
  const double c = 2.0 * (two_l - 1.0);
  const double dc = -2.0 * std::numbers::ln2 * two_l;
  const auto& t = theta.thetas;
  double tail = 0.0;
  double dg = 0.0;
  for (int k = theta.p() - 1; k >= 0; --k) {
    if (t[k] > 0.0) {
      const double w = std::pow(t[k], -lambda);
      dg += w * (-std::log(t[k]) * (c * tail + t[k]) + dc * tail);
    }
    tail += t[k];
  }
  return dg;
}

struct GBarResult {
  double value = 1.0;
  std::uint64_t argmax = 1;  // smallest odd M attaining the value
};

/// max G over the vectors generated by odd M <= m_bound (p = tau(M)). Uses
///   G = M^{l-1} sum_k 2^{-l t_k} (c S_k + 2^{t_k}),
/// with S_k the integer sum of the lower digits.
inline GBarResult g_bar(double lambda, std::uint64_t m_bound) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::domain_error("g_bar: requires 0 < lambda < 1");
  if (m_bound < 3) throw std::domain_error("g_bar: M_bound must be >= 3");
  if (m_bound > (std::uint64_t{1} << 40)) throw std::domain_error("g_bar: M_bound too large");
  const double c = 2.0 * (std::pow(2.0, -lambda) - 1.0);
  std::array<double, 64> scale{};
  for (int t = 0; t < 64; ++t) scale[t] = std::exp2(-lambda * t);

  GBarResult best;
  best.value = 1.0;  // M = 1
  best.argmax = 1;
  for (std::uint64_t m = 3; m <= m_bound; m += 2) {
    double inner = 0.0;
    std::uint64_t rest = m;
    while (rest != 0) {
      const int t = std::bit_width(rest) - 1;
      const std::uint64_t top = std::uint64_t{1} << t;
      rest ^= top;
      inner += scale[t] * (c * static_cast<double>(rest) + static_cast<double>(top));
    }
    const double g = std::pow(static_cast<double>(m), lambda - 1.0) * inner;
    if (g > best.value) {
      best.value = g;
      best.argmax = m;
    }
  }
  return best;
}

struct SLambdaResult {
  double value = 0.0;
  double remainder_bound = 0.0;  // bound on what the truncated tail leaves out
  int exact_terms = 0;           // terms k < exact_terms use tabulated L(2^k)
  int total_terms = 0;
};

/// Term weight (1 + (-1)^k / 2^{k-1}) / 3.
inline double s_lambda_weight(int k) {
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return (1.0 + sign * std::ldexp(1.0, 1 - k)) / 3.0;
}

/// s_l = (1/3) sum_{k>=0} (1 + (-1)^k / 2^{k-1}) (L(2^k) - 4^k I) for 1 < l < 2.
///
/// Terms with k <= exact_level come from the dyadic table. Beyond it the
/// deficit is C_l 2^{k(1-l)} plus a correction of size B 2^{-k(1+l)}, with B
/// twice the second coefficient of the singular expansion of L; the unsummed
/// geometric tail and the dropped corrections form the remainder bound.
inline SLambdaResult s_lambda(Lambda lambda, double tolerance, int exact_level = 20) {
  if (lambda.regime() != Regime::one_to_two) throw std::domain_error("s_lambda: requires 1 < lambda < 2");
  if (!(tolerance > 0.0)) throw std::domain_error("s_lambda: tolerance must be > 0");
  if (exact_level < 12 || exact_level > 40) throw std::domain_error("s_lambda: exact_level must lie in [12, 40]");
  const double l = lambda.value();
  const DyadicEnergyTable<long double> table(lambda, exact_level);
  const long double constant = second_order_constant<long double>(lambda);

  long double sum = 0;
  for (int k = 0; k <= exact_level; ++k) sum += static_cast<long double>(s_lambda_weight(k)) * table.deficit(k);

  const auto c = detail::sinc_power_coefficients<double>(l, 2);
  const double correction = 2.0 * std::abs(2.0 * zeta_at_negative(l + 2.0) * c[1] * std::pow(std::numbers::pi, l + 2.0) *
                                           std::exp2(l));
  const double q_res = std::exp2(-(1.0 + l));
  auto residual_tail = [&](int from) {
    // sum_{k >= from} (1 + 2^{1-k}) / 3 * B * 2^{-k(1+l)}
    return (1.0 + std::ldexp(1.0, 1 - from)) / 3.0 * correction * std::pow(q_res, from) / (1.0 - q_res);
  };
  const double q = std::exp2(1.0 - l);
  auto model_tail = [&](int from) {
    return (1.0 + std::ldexp(1.0, 1 - from)) / 3.0 * std::abs(static_cast<double>(constant)) * std::pow(q, from) /
           (1.0 - q);
  };

  int k = exact_level + 1;
  while (model_tail(k) + residual_tail(exact_level + 1) >= tolerance && k < 4000) {
    sum += static_cast<long double>(s_lambda_weight(k)) * constant * std::exp2(static_cast<long double>(k) * (1.0L - l));
    ++k;
  }
  SLambdaResult r;
  r.value = static_cast<double>(sum);
  r.remainder_bound = model_tail(k) + residual_tail(exact_level + 1);
  r.exact_terms = exact_level + 1;
  r.total_terms = k;
  return r;
}

/// lim_p (H - N^2 I) / log N along N_r(p) = (2^{rp} - 1) / (2^r - 1) at lambda = 1,
///   -(2^r - 2) / (r (2^r - 1)) * pi / (3 log 2).
inline double subsequence_limit_lambda1(int r) {
  if (r < 1) throw std::domain_error("subsequence_limit_lambda1: r must be >= 1");
  const double two_r = std::ldexp(1.0, r);
  return -(two_r - 2.0) / (r * (two_r - 1.0)) * std::numbers::pi / (3.0 * std::numbers::ln2);
}

/// N_r(p) = sum_{k<p} 2^{rk}.
inline std::uint64_t subsequence_index(int r, int p) {
  if (r < 1 || p < 1) throw std::domain_error("subsequence_index: r and p must be >= 1");
  if (static_cast<long>(r) * (p - 1) > 62) throw std::overflow_error("subsequence_index: too large");
  std::uint64_t n = 0;
  for (int k = 0; k < p; ++k) n |= std::uint64_t{1} << (r * k);
  return n;
}

/// Predicted limit behaviour of the second-order sequence and of the
/// potential excess U_N(a_N) - N I for one exponent.
struct LimitReport {
  Regime regime = Regime::below_one;
  std::string normalization;      // kappa(N)
  double continuous_energy = 0.0; // I_l(sigma_1), or 2^{l-1} when l >= 2
  std::optional<double> limit_constant;  // (2 pi)^l 2 zeta(-l) when l < 2
  double limsup = 0.0;
  double liminf = 0.0;
  bool liminf_is_bound = false;   // liminf <= reported value rather than equality
  std::optional<double> g_bar;
  std::optional<std::uint64_t> g_bar_witness;
  double potential_excess_low = 0.0;
  double potential_excess_high = 0.0;
};

inline LimitReport limit_report(Lambda lambda, std::uint64_t g_bar_bound = std::uint64_t{1} << 20) {
  LimitReport r;
  r.regime = lambda.regime();
  const double l = lambda.value();
  switch (r.regime) {
    case Regime::below_one: {
      r.normalization = "N^(1-lambda)";
      const double c = second_order_constant(lambda);
      const auto gb = g_bar(l, g_bar_bound);
      r.limit_constant = c;
      r.limsup = c;
      r.liminf = gb.value * c;
      r.g_bar = gb.value;
      r.g_bar_witness = gb.argmax;
      break;
    }
    case Regime::one:
      r.normalization = "log N";
      r.limit_constant = second_order_constant(lambda);
      r.limsup = 0.0;
      r.liminf = subsequence_limit_lambda1(2);
      r.liminf_is_bound = true;
      break;
    case Regime::one_to_two:
      r.normalization = "1";
      r.limit_constant = second_order_constant(lambda);
      r.limsup = 0.0;
      r.liminf = s_lambda(lambda, 1e-12).value;
      r.liminf_is_bound = true;
      break;
    case Regime::two:
    case Regime::above_two:
      r.normalization = "1";
      r.limsup = collapse_deficit(lambda, 2);
      r.liminf = collapse_deficit(lambda, 3);
      break;
  }
  if (l < 2.0) {
    r.continuous_energy = continuous_energy(lambda, 1);
    r.potential_excess_low = 0.0;
    r.potential_excess_high = r.continuous_energy;
  } else {
    r.continuous_energy = maximal_energy(lambda);
    r.potential_excess_low = 0.0;
    r.potential_excess_high = std::pow(2.0, l - 1.0);
  }
  return r;
}

}  // namespace greedy
