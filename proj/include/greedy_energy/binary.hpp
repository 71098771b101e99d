#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace greedy {

/// Binary decomposition N = 2^{n_1} + ... + 2^{n_p} with n_1 > ... > n_p >= 0.
/// Exponents are stored most significant first.
class BinaryRep {
 public:
  explicit BinaryRep(std::uint64_t n) {
    if (n < 1) throw std::domain_error("BinaryRep: N must be >= 1");
    for (int bit = 63; bit >= 0; --bit) {
      if ((n >> bit) & 1u) exponents_.push_back(bit);
    }
  }

  std::span<const int> exponents() const noexcept { return exponents_; }

  /// tau(N), the number of ones.
  int length() const noexcept { return static_cast<int>(exponents_.size()); }

  int leading() const noexcept { return exponents_.front(); }

  std::uint64_t value() const noexcept {
    std::uint64_t n = 0;
    for (int e : exponents_) n |= std::uint64_t{1} << e;
    return n;
  }

  /// sum_{j>k} 2^{n_j - n_k}, with k zero-based. Always < 1.
  double tail_ratio(int k) const {
    double s = 0.0;
    for (int j = k + 1; j < length(); ++j) s += std::ldexp(1.0, exponents_[j] - exponents_[k]);
    return s;
  }

 private:
  std::vector<int> exponents_;
};

inline BinaryRep decompose(std::uint64_t n) { return BinaryRep(n); }

/// Number of ones in the binary expansion.
inline int tau(std::uint64_t n) { return std::popcount(n); }

/// Coefficients of the binary energy formula:
///   H = sum_k cross[k] * L(2^{n_k+1}) + sum_k self[k] * L(2^{n_k}),
/// cross[k] = sum_{j>k} 2^{n_j-n_k}, self[k] = 1 - 2 cross[k].
struct BinaryWeights {
  std::vector<double> cross;
  std::vector<double> self;
};

inline BinaryWeights binary_weights(const BinaryRep& rep) {
  BinaryWeights w;
  w.cross.resize(rep.length());
  w.self.resize(rep.length());
  for (int k = 0; k < rep.length(); ++k) {
    w.cross[k] = rep.tail_ratio(k);
    w.self[k] = 1.0 - 2.0 * w.cross[k];
  }
  return w;
}

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("square identity: overflow");
  return out;
}

inline std::int64_t pow2_checked(int e) {
  if (e < 0 || e > 62) throw std::overflow_error("square identity: exponent out of range");
  return std::int64_t{1} << e;
}

}  // namespace detail

inline constexpr std::uint64_t kMaxSquareIdentityN = std::uint64_t{1} << 31;

/// Right-hand side of the binary square identity for N, in exact integers:
///   sum_{k<p} (sum_{j>k} 2^{n_j-n_k}) 2^{2(n_k+1)}
///     + sum_k (1 - sum_{j>k} 2^{n_j-n_k+1}) 2^{2 n_k}.
/// Every fractional coefficient times its power of four is an integer, so the
/// terms are accumulated as 2^{n_j+n_k+2}, 2^{2 n_k} and -2^{n_j+n_k+1}.
inline std::int64_t square_identity_rhs(const BinaryRep& rep) {
  if (rep.value() > kMaxSquareIdentityN) {
    throw std::overflow_error("square identity: N must be <= 2^31");
  }
  const auto n = rep.exponents();
  std::int64_t total = 0;
  for (std::size_t k = 0; k < n.size(); ++k) {
    std::int64_t term = detail::pow2_checked(2 * n[k]);
    for (std::size_t j = k + 1; j < n.size(); ++j) {
      term = detail::checked_add(term, detail::pow2_checked(n[j] + n[k] + 2));
      term = detail::checked_add(term, -detail::pow2_checked(n[j] + n[k] + 1));
    }
    total = detail::checked_add(total, term);
  }
  return total;
}

inline bool square_identity_check(std::uint64_t n) {
  if (n < 2) throw std::domain_error("square_identity_check: N must be >= 2");
  const std::int64_t rhs = square_identity_rhs(BinaryRep(n));
  const auto nn = static_cast<std::int64_t>(n);
  return rhs == nn * nn;
}

}  // namespace greedy
