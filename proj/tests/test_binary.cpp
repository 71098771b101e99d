#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include "greedy_energy/binary.hpp"

namespace {

using greedy::BinaryRep;

TEST(BinaryRep, DigitsMostSignificantFirst) {
  const BinaryRep r(0b1011001);
  const std::vector<int> want{6, 4, 3, 0};
  EXPECT_EQ(std::vector<int>(r.exponents().begin(), r.exponents().end()), want);
  EXPECT_EQ(r.length(), 4);
  EXPECT_EQ(r.leading(), 6);
  EXPECT_EQ(r.value(), 0b1011001u);
  EXPECT_EQ(greedy::tau(0b1011001), 4);
}

TEST(BinaryRep, RejectsZero) { EXPECT_THROW(BinaryRep(0), std::domain_error); }

TEST(BinaryRep, TailRatioBelowOne) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = rng() | 1u;
    const BinaryRep r(n);
    EXPECT_EQ(r.value(), n);
    for (int k = 0; k < r.length(); ++k) {
      EXPECT_GE(r.tail_ratio(k), 0.0);
      EXPECT_LT(r.tail_ratio(k), 1.0);
    }
  }
}

TEST(BinaryWeights, Example) {
  const auto w = greedy::binary_weights(BinaryRep(6));  // 4 + 2
  ASSERT_EQ(w.cross.size(), 2u);
  EXPECT_DOUBLE_EQ(w.cross[0], 0.5);
  EXPECT_DOUBLE_EQ(w.self[0], 0.0);
  EXPECT_DOUBLE_EQ(w.cross[1], 0.0);
  EXPECT_DOUBLE_EQ(w.self[1], 1.0);
}

TEST(SquareIdentity, ExhaustiveSmall) {
  for (std::uint64_t n = 2; n <= 1u << 16; ++n) ASSERT_TRUE(greedy::square_identity_check(n)) << n;
}

TEST(SquareIdentity, RandomUpToLimit) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> dist(2, greedy::kMaxSquareIdentityN);
  for (int i = 0; i < 20000; ++i) ASSERT_TRUE(greedy::square_identity_check(dist(rng)));
  EXPECT_TRUE(greedy::square_identity_check(greedy::kMaxSquareIdentityN));
  EXPECT_TRUE(greedy::square_identity_check(greedy::kMaxSquareIdentityN - 1));
}

TEST(SquareIdentity, Limits) {
  EXPECT_THROW(greedy::square_identity_check(1), std::domain_error);
  EXPECT_THROW(greedy::square_identity_check(greedy::kMaxSquareIdentityN + 1), std::overflow_error);
}

}  // namespace
