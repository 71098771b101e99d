#pragma once

#include <cstddef>

namespace greedy {

/// Pairwise (tree) summation of term(i) for i in [begin, end). Rounding error
/// grows like log(n) instead of n, with no temporary storage.
template <typename T, typename Term>
T pairwise_sum(std::size_t begin, std::size_t end, const Term& term) {
  constexpr std::size_t kBlock = 32;
  const std::size_t count = end - begin;
  if (count <= kBlock) {
    T s = 0;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = begin + count / 2;
  return pairwise_sum<T>(begin, mid, term) + pairwise_sum<T>(mid, end, term);
}

}  // namespace greedy
