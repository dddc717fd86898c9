#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rmprop/quadrature.hpp"

using namespace rmprop;

TEST(GaussLegendre, LowOrderNodes) {
  const auto& g2 = GaussLegendre<2>::instance();
  EXPECT_NEAR(g2.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(g2.weights[0], 1.0, 1e-15);
  const auto& g3 = GaussLegendre<3>::instance();
  EXPECT_NEAR(g3.nodes[1], 0.0, 1e-15);
  EXPECT_NEAR(g3.weights[1], 8.0 / 9.0, 1e-15);
  EXPECT_NEAR(g3.nodes[2], std::sqrt(0.6), 1e-15);
}

TEST(GaussLegendre, ExactForDegree31) {
  const auto& g = GaussLegendre<16>::instance();
  double wsum = 0.0;
  for (double w : g.weights) wsum += w;
  EXPECT_NEAR(wsum, 2.0, 1e-14);
  for (int deg = 0; deg <= 31; ++deg) {
    double q = 0.0;
    for (std::size_t i = 0; i < 16; ++i) q += g.weights[i] * std::pow(g.nodes[i], deg);
    double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    EXPECT_NEAR(q, exact, 1e-14) << deg;
  }
}

TEST(Panels, ConvergesOnOscillatoryIntegrand) {
  auto f = [](double x) { return std::cos(200.0 * x); };
  double exact = std::sin(200.0) / 200.0;
  double e4 = std::abs(integrate_panels(f, 0.0, 1.0, 4) - exact);
  double e8 = std::abs(integrate_panels(f, 0.0, 1.0, 8) - exact);
  double e32 = std::abs(integrate_panels(f, 0.0, 1.0, 32) - exact);
  EXPECT_GT(e4, 1e3 * e8);
  EXPECT_LT(e32, 1e-14);
}

TEST(Sinc, SeriesBranch) {
  EXPECT_EQ(sinc(0.0), 1.0);
  for (double t : {1e-4, -1e-4, 0.99e-4, 1e-6}) {
    long double exact = std::sin(static_cast<long double>(t)) / t;
    EXPECT_NEAR(sinc(t), static_cast<double>(exact), 2e-16) << t;
  }
  EXPECT_NEAR(sinc(std::nextafter(1e-4, 0.0)), sinc(1e-4), 3e-16);
  EXPECT_NEAR(sinc(3.0), std::sin(3.0) / 3.0, 1e-16);
}

TEST(HalfVersine, SeriesBranchAndValues) {
  EXPECT_EQ(half_versine_ratio(0.0), 0.5);
  EXPECT_EQ(half_versine_ratio(1e-300), 0.5);
  EXPECT_NEAR(half_versine_ratio(std::numbers::pi), 2.0 / (std::numbers::pi * std::numbers::pi), 1e-16);
  for (double x : {1e-4, 0.99e-4, 3e-5}) {
    long double xl = x;
    long double exact = 2 * std::pow(std::sin(xl / 2), 2) / (xl * xl);
    EXPECT_NEAR(half_versine_ratio(x), static_cast<double>(exact), 2e-16) << x;
  }
}
