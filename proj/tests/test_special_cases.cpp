#include <cmath>

#include <gtest/gtest.h>

#include "greedy_energy/circle_exact.hpp"
#include "greedy_energy/special_cases.hpp"
#include "oracles.hpp"

namespace {

using greedy::Lambda;

TEST(LambdaTwo, ClosedForms) {
  for (std::int64_t n = 1; n <= 100; ++n) {
    EXPECT_EQ(greedy::lambda2_energy(2 * n), 8 * n * n);
    EXPECT_EQ(greedy::lambda2_energy(2 * n + 1), 8 * (n * n + n));
    EXPECT_EQ(greedy::lambda2_extremal_potential(2 * n), 4 * n);
  }
}

TEST(LambdaTwo, BinaryFormulaAtBoundary) {
  for (std::uint64_t n = 2; n <= 201; ++n) {
    const double want = static_cast<double>(greedy::lambda2_energy(n));
    EXPECT_NEAR(greedy::greedy_energy_exact(Lambda(2.0), n), want, 1e-12 * want) << n;
  }
}

TEST(LambdaTwo, BruteForceOnAnySequenceWithAntipodes) {
  // Squared chords of the van der Corput points: any antipodal-pair sequence works.
  const auto pts = oracle::van_der_corput_points(41);
  const auto h = oracle::cumulative_energies(pts, 2.0);
  for (std::uint64_t n = 2; n <= 41; ++n) {
    EXPECT_NEAR(static_cast<double>(h[n]), static_cast<double>(greedy::lambda2_energy(n)), 1e-9) << n;
  }
}

TEST(Collapse, Formulas) {
  for (double l : {2.0, 2.5, 3.0, 7.0}) {
    const Lambda lambda(l);
    for (std::uint64_t n = 1; n <= 60; ++n) {
      const double pairs = static_cast<double>((n / 2) * ((n + 1) / 2));
      EXPECT_NEAR(greedy::collapse_energy(lambda, n), 2 * pairs * std::pow(2.0, l), 1e-12 * (1 + pairs)) << n;
      EXPECT_NEAR(greedy::collapse_extremal_potential(lambda, n), std::ceil(n / 2.0) * std::pow(2.0, l), 1e-12 * n);
    }
    EXPECT_NEAR(greedy::collapse_energy(lambda, 2 * 50), std::pow(2.0, l + 1) * 2500, 1e-9);
    EXPECT_NEAR(greedy::collapse_deficit(lambda, 2), 0.0, 1e-12);
  }
}

TEST(Collapse, OddDeficitIsNegative) {
  for (double l : {2.0, 3.0, 4.5}) EXPECT_LT(greedy::collapse_deficit(Lambda(l), 3), 0.0);
}

TEST(Collapse, DomainChecks) {
  EXPECT_THROW(greedy::collapse_energy(Lambda(1.5), 4), std::domain_error);
  EXPECT_THROW(greedy::lambda2_energy(0), std::domain_error);
}

}  // namespace
