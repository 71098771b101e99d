#pragma once

// Closed forms for lambda >= 2, where the greedy sequence degenerates.
//
// lambda = 2: |x-a|^2 + |x+a|^2 = 4, so every even prefix has constant
// potential and any maximizer may be taken; energies depend on N only.
// lambda > 2: the sequence alternates between a_0 and -a_0.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "greedy_energy/lambda.hpp"

namespace greedy {

/// H_2(alpha_N): 8 n^2 for N = 2n, 8 (n^2 + n) for N = 2n + 1.
inline std::int64_t lambda2_energy(std::uint64_t n_points) {
  if (n_points < 1) throw std::domain_error("lambda2_energy: N must be >= 1");
  if (n_points > (std::uint64_t{1} << 30)) throw std::overflow_error("lambda2_energy: N too large");
  const auto n = static_cast<std::int64_t>(n_points / 2);
  return n_points % 2 == 0 ? 8 * n * n : 8 * (n * n + n);
}

/// U_N(a_N) at lambda = 2, N >= 1: U_{2n-1} = U_{2n} = 4n.
inline std::int64_t lambda2_extremal_potential(std::uint64_t n_points) {
  if (n_points < 1) throw std::domain_error("lambda2_extremal_potential: N must be >= 1");
  return 4 * static_cast<std::int64_t>((n_points + 1) / 2);
}

namespace detail {

inline void require_at_least_two(Lambda lambda, const char* what) {
  if (lambda.value() < 2.0) {
    throw std::domain_error(std::string(what) + ": requires lambda >= 2");
  }
}

}  // namespace detail

/// Energy of the alternating configuration {a_0, -a_0, a_0, ...} of N points,
/// 2^(l+1) n^2 (N = 2n) or 2^(l+1) (n^2 + n) (N = 2n + 1).
inline double collapse_energy(Lambda lambda, std::uint64_t n_points) {
  detail::require_at_least_two(lambda, "collapse_energy");
  if (n_points < 1) throw std::domain_error("collapse_energy: N must be >= 1");
  const double n = static_cast<double>(n_points / 2);
  const double scale = std::pow(2.0, lambda.value() + 1.0);
  return n_points % 2 == 0 ? scale * n * n : scale * (n * n + n);
}

/// U_N(a_N) of the alternating configuration: ceil(N/2) 2^l.
inline double collapse_extremal_potential(Lambda lambda, std::uint64_t n_points) {
  detail::require_at_least_two(lambda, "collapse_extremal_potential");
  if (n_points < 1) throw std::domain_error("collapse_extremal_potential: N must be >= 1");
  return static_cast<double>((n_points + 1) / 2) * std::pow(2.0, lambda.value());
}

/// H(alpha_N) - N^2 2^(l-1): zero for even N, -2^(l-1) for odd N.
inline double collapse_deficit(Lambda lambda, std::uint64_t n_points) {
  detail::require_at_least_two(lambda, "collapse_deficit");
  if (n_points < 1) throw std::domain_error("collapse_deficit: N must be >= 1");
  return n_points % 2 == 0 ? 0.0 : -std::pow(2.0, lambda.value() - 1.0);
}

}  // namespace greedy
