#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "greedy_energy/circle_exact.hpp"
#include "oracles.hpp"

namespace {

using greedy::DyadicAngle;
using greedy::Lambda;

TEST(DyadicAngle, ReducesAndPrints) {
  const DyadicAngle a(6, 4);
  EXPECT_EQ(a.numerator(), 3u);
  EXPECT_EQ(a.level(), 3);
  EXPECT_EQ(a.to_string(), "3/8");
  EXPECT_EQ(DyadicAngle(0, 5), DyadicAngle());
  EXPECT_EQ(DyadicAngle().to_string(), "0");
  EXPECT_THROW(DyadicAngle(8, 3), std::domain_error);
}

TEST(DyadicAngle, Antipode) {
  EXPECT_EQ(DyadicAngle().antipode(), DyadicAngle(1, 1));
  EXPECT_EQ(DyadicAngle(1, 1).antipode(), DyadicAngle());
  EXPECT_EQ(DyadicAngle(3, 3).antipode(), DyadicAngle(7, 3));
  for (std::uint64_t n = 0; n < 64; ++n) {
    const auto p = greedy::canonical_point(n);
    EXPECT_EQ(p.antipode().antipode(), p);
    EXPECT_NEAR(greedy::chord(p, p.antipode()), 2.0, 1e-15);
  }
}

TEST(Canonical, FirstTerms) {
  const char* want[] = {"0", "1/2", "1/4", "3/4", "1/8", "5/8", "3/8", "7/8", "1/16"};
  const auto seq = greedy::canonical_sequence(9);
  for (int i = 0; i < 9; ++i) EXPECT_EQ(seq[i].to_string(), want[i]);
}

TEST(Canonical, RadicalInverseOracle) {
  for (std::uint64_t n = 0; n < 5000; ++n) {
    EXPECT_EQ(greedy::canonical_point(n).turns(), static_cast<double>(oracle::radical_inverse(n))) << n;
  }
}

TEST(Canonical, OddTermsAreAntipodes) {
  const auto seq = greedy::canonical_sequence(4096);
  for (std::size_t k = 0; k + 1 < seq.size(); k += 2) EXPECT_EQ(seq[k + 1], seq[k].antipode());
}

TEST(Canonical, GridGreedyOracle) {
  // Without symmetry or closed forms: a plain grid search reproduces the sequence.
  for (double l : {0.3, 1.0, 1.7}) {
    const auto turns = oracle::grid_greedy_circle(l, 32, 1 << 12);
    const auto seq = greedy::canonical_sequence(32);
    for (std::size_t i = 0; i < 32; ++i) EXPECT_DOUBLE_EQ(turns[i], seq[i].turns()) << l << " " << i;
  }
}

TEST(RootsEnergy, ComplexOracle) {
  for (double l : {0.2, 1.0, 1.6, 2.0}) {
    for (std::uint64_t n : {1u, 2u, 3u, 7u, 16u, 33u}) {
      std::vector<oracle::Point> p;
      for (std::uint64_t k = 0; k < n; ++k) p.push_back(oracle::on_circle(static_cast<long double>(k) / n));
      long double want = 0;
      for (std::uint64_t k = 0; k < n; ++k) want += oracle::potential(p, n, l, p[k]);
      EXPECT_NEAR(greedy::roots_energy(Lambda(l), n), static_cast<double>(want), 1e-12 * (1 + std::abs(double(want))));
    }
  }
  EXPECT_DOUBLE_EQ(greedy::roots_energy(Lambda(2.0), 8), 128.0);
}

TEST(MidpointPotential, TwoRoutesAgree) {
  for (double l : {0.1, 0.9, 1.0, 1.8}) {
    for (std::uint64_t n = 1; n <= 300; n += 7) {
      const double a = greedy::midpoint_potential(Lambda(l), n);
      const double b = greedy::midpoint_potential_via_roots(Lambda(l), n);
      EXPECT_NEAR(a, b, 1e-12 * a) << l << " " << n;
    }
  }
}

TEST(DeficitExpansion, MatchesDirectSums) {
  for (double l : {0.05, 0.3, 1.0, 1.5, 1.95}) {
    const Lambda lambda(l);
    const long double i = greedy::continuous_energy<long double>(lambda, 1);
    for (int k = 5; k <= 14; ++k) {
      const std::uint64_t n = std::uint64_t{1} << k;
      const long double direct = greedy::roots_energy<long double>(lambda, n) - std::ldexp(i, 2 * k);
      const long double expanded = greedy::roots_deficit_expansion<long double>(lambda, n);
      // the direct difference carries the rounding of 4^k I
      EXPECT_NEAR(static_cast<double>(direct), static_cast<double>(expanded), 1e-17 * std::ldexp(1.0, 2 * k)) << l << " " << k;
    }
  }
}

TEST(DeficitExpansion, NonPowersOfTwo) {
  for (std::uint64_t n : {100u, 333u, 1000u}) {
    const Lambda lambda(0.7);
    const long double direct = greedy::roots_energy<long double>(lambda, n) -
                               static_cast<long double>(n) * n * greedy::continuous_energy<long double>(lambda, 1);
    EXPECT_NEAR(static_cast<double>(direct), static_cast<double>(greedy::roots_deficit_expansion<long double>(lambda, n)),
                1e-12);
  }
}

TEST(RLambda, ConvergesToConstant) {
  EXPECT_NEAR(greedy::r_lambda(Lambda(1.0), 1u << 16), -std::numbers::pi / 3.0, 1e-4);
  for (double l : {0.5, 1.5}) {
    EXPECT_NEAR(greedy::r_lambda(Lambda(l), 1u << 16), (std::pow(2 * std::numbers::pi, l) * 2 * oracle::zeta(-l)), 1e-4);
  }
}

TEST(RLambda, Negative) {
  for (double l : {0.05, 0.5, 1.0, 1.95}) {
    for (std::uint64_t n = 2; n < 5000; n = n * 3 + 1) EXPECT_LT(greedy::r_lambda(Lambda(l), n), 0.0);
  }
}

TEST(Kappa, Regimes) {
  EXPECT_DOUBLE_EQ(greedy::kappa(Lambda(0.5), 16), 4.0);
  EXPECT_DOUBLE_EQ(greedy::kappa(Lambda(1.0), 16), std::log(16.0));
  EXPECT_DOUBLE_EQ(greedy::kappa(Lambda(1.5), 16), 1.0);
}

class BinaryFormula : public ::testing::TestWithParam<double> {};

TEST_P(BinaryFormula, MatchesBruteForce) {
  const double l = GetParam();
  const Lambda lambda(l);
  constexpr std::size_t kMax = 512;
  const auto pts = oracle::van_der_corput_points(kMax);
  const auto h = oracle::cumulative_energies(pts, l);
  const greedy::DyadicEnergyTable<long double> table(lambda, 10);
  for (std::size_t n = 2; n <= kMax; ++n) {
    const double want = static_cast<double>(h[n]);
    EXPECT_NEAR(greedy::greedy_energy_exact(lambda, n), want, 1e-10 * want) << n;
    const double deficit = static_cast<double>(h[n] - static_cast<long double>(n * n) * table.continuous());
    EXPECT_NEAR(static_cast<double>(table.energy_deficit(n)), deficit, 1e-10 * want) << n;
    const double u = static_cast<double>(oracle::potential(pts, n, l, pts[n % kMax]));
    if (n < kMax) {
      EXPECT_NEAR(greedy::greedy_extremal_potential(lambda, n), u, 1e-10 * u) << n;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Lambdas, BinaryFormula, ::testing::Values(0.3, 0.5, 1.0, 1.5, 1.9));

TEST(DirectSums, AgreeWithTable) {
  const Lambda lambda(0.7);
  const auto seq = greedy::canonical_sequence(200);
  const std::span<const DyadicAngle> all(seq);
  for (std::size_t n = 2; n < 200; n += 13) {
    EXPECT_NEAR(greedy::direct_energy(all.first(n), lambda), greedy::greedy_energy_exact(lambda, n), 1e-10 * n * n);
    EXPECT_NEAR(greedy::direct_potential(all.first(n), lambda, seq[n]), greedy::greedy_extremal_potential(lambda, n),
                1e-11 * n);
  }
}

TEST(GreedyProperty, PotentialIsMaximizedOnFineGrid) {
  // a_N is a maximizer of U_N over the circle: no point of a fine grid beats it.
  for (double l : {0.4, 1.2}) {
    const auto pts = oracle::van_der_corput_points(65);
    for (std::size_t n : {3u, 10u, 21u, 64u}) {
      const long double best = oracle::potential(pts, n, l, pts[n]);
      for (int j = 0; j < 4096; ++j) {
        const long double u = oracle::potential(pts, n, l, oracle::on_circle(j / 4096.0L));
        ASSERT_LE(u, best * (1 + 1e-13L)) << l << " " << n << " " << j;
      }
    }
  }
}

TEST(Bounds, PotentialSandwich) {
  for (double l : {0.01, 0.1, 0.3, 0.7, 1.0, 1.3, 1.5, 1.9}) {
    const greedy::DyadicEnergyTable<long double> t(Lambda(l), 11);
    const long double i = t.continuous();
    for (std::uint64_t n = 1; n <= 2000; ++n) {
      const long double e = t.potential_excess(n);
      ASSERT_GT(e, 0) << l << " " << n;
      ASSERT_LT(e, i) << l << " " << n;
    }
  }
}

TEST(Bounds, EnergySandwich) {
  for (double l : {0.2, 1.0, 1.8}) {
    const greedy::DyadicEnergyTable<long double> t(Lambda(l), 13);
    for (std::uint64_t n = 2; n <= 4096; ++n) {
      const long double d = t.energy_deficit(n);
      ASSERT_LT(d, 0) << n;
      ASSERT_GT(d, -static_cast<long double>(n) * t.continuous()) << n;
    }
  }
}

TEST(SecondOrderSeries, Rows) {
  const auto rows = greedy::second_order_series(Lambda(0.5), 100);
  ASSERT_EQ(rows.size(), 99u);
  EXPECT_EQ(rows.front().index, 2u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.second_order, r.energy_deficit / std::sqrt(double(r.index)), 1e-12);
    EXPECT_EQ(r.angle, greedy::canonical_point(r.index));
  }
  EXPECT_THROW(greedy::second_order_series(Lambda(2.0), 10), std::domain_error);
  EXPECT_THROW(greedy::second_order_series(Lambda(1.0), 1), std::domain_error);
}

TEST(Table, RangeChecks) {
  const greedy::DyadicEnergyTable<long double> t(Lambda(1.0), 4);
  EXPECT_NO_THROW(t.energy(16));
  EXPECT_THROW(t.energy(17), std::out_of_range);
  EXPECT_THROW(t.energy(1), std::domain_error);
  EXPECT_THROW(greedy::DyadicEnergyTable<long double>(Lambda(2.5), 4), std::domain_error);
}

}  // namespace
