#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "greedy_energy/sphere.hpp"
#include "oracles.hpp"

namespace {

using greedy::SpherePoint;

TEST(SpherePoint, Normalizes) {
  Eigen::VectorXd v(3);
  v << 3, 0, 4;
  const SpherePoint p(v);
  EXPECT_DOUBLE_EQ(p[0], 0.6);
  EXPECT_DOUBLE_EQ(p[2], 0.8);
  EXPECT_EQ(p.dimension(), 2);
  EXPECT_THROW(SpherePoint(Eigen::VectorXd::Zero(3)), std::domain_error);
  EXPECT_THROW(SpherePoint(Eigen::VectorXd::Ones(1)), std::domain_error);
  EXPECT_THROW(SpherePoint::basis(2, 3), std::domain_error);
}

TEST(SpherePoint, AntipodeIsExact) {
  const SpherePoint p = SpherePoint::from_angle(0.3);
  EXPECT_EQ(-(-p), p);
  EXPECT_EQ((-p).coords(), -p.coords());
  EXPECT_NEAR(greedy::chord_distance(p, -p), 2.0, 1e-15);
}

TEST(ChordDistance, SmallSeparation) {
  Eigen::VectorXd v(3);
  v << 1.0, 1e-9, 0.0;
  const SpherePoint a = SpherePoint::basis(2, 0);
  const SpherePoint b(v);
  EXPECT_NEAR(greedy::chord_distance(a, b), 2 * std::sin(0.5 * std::atan(1e-9)), 1e-24);
}

TEST(QuasiUniform, OnSphere) {
  for (int d : {1, 2, 3, 4, 5}) {
    for (std::uint64_t j = 0; j < 200; ++j) {
      const auto p = greedy::quasi_uniform_point(d, j);
      EXPECT_EQ(p.dimension(), d);
      EXPECT_NEAR(p.coords().norm(), 1.0, 1e-14);
    }
  }
}

TEST(HemisphereGrid, CoversSphereUpToAntipodes) {
  for (int d : {1, 2, 3}) {
    const std::size_t count = d == 1 ? 512 : 4096;
    const Eigen::MatrixXd grid = greedy::hemisphere_grid(d, count);
    ASSERT_EQ(grid.rows(), d + 1);
    const double spacing = d == 1 ? std::numbers::pi / count : std::pow(double(count), -1.0 / d);
    double worst = 0.0;
    for (std::uint64_t j = 0; j < 400; ++j) {
      const Eigen::VectorXd x = greedy::quasi_uniform_point(d, j + 7919).coords();
      const double best = (grid.transpose() * x).cwiseAbs().maxCoeff();
      worst = std::max(worst, std::acos(std::min(1.0, best)));
    }
    EXPECT_LT(worst, 6.0 * spacing) << d;
  }
}

TEST(CapMeasure, ClosedForms) {
  EXPECT_NEAR(greedy::cap_measure(2, 0.3), 0.35, 1e-15);  // Archimedes
  EXPECT_NEAR(greedy::cap_measure(1, 0.0), 0.5, 1e-15);
  EXPECT_NEAR(greedy::cap_measure(1, 0.5), 1.0 / 3.0, 1e-15);
  for (int d : {1, 2, 3, 6}) {
    EXPECT_NEAR(greedy::cap_measure(d, -1.0), 1.0, 1e-15);
    EXPECT_NEAR(greedy::cap_measure(d, 1.0), 0.0, 1e-15);
    EXPECT_NEAR(greedy::cap_measure(d, 0.0), 0.5, 1e-14);
  }
  EXPECT_THROW(greedy::cap_measure(2, 1.5), std::domain_error);
}

TEST(CapMeasure, QuadratureOracle) {
  boost::math::quadrature::tanh_sinh<double> q;
  for (int d : {2, 3, 4, 5, 9}) {
    auto w = [&](double t) { return std::pow((1 - t) * (1 + t), 0.5 * (d - 2)); };
    const double total = q.integrate(w, -1.0, 1.0);
    for (double t : {-0.9, -0.4, 0.1, 0.75}) {
      EXPECT_NEAR(greedy::cap_measure(d, t), q.integrate(w, t, 1.0) / total, 1e-12) << d << " " << t;
    }
  }
}

TEST(CapMeasure, SymmetricComplement) {
  for (int d : {1, 2, 3, 4, 7}) {
    for (double t = -0.95; t < 1.0; t += 0.1) {
      EXPECT_NEAR(greedy::cap_measure(d, t) + greedy::cap_measure(d, -t), 1.0, 1e-13);
    }
  }
}

}  // namespace
