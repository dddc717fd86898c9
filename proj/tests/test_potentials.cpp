#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rmprop/geometry.hpp"
#include "rmprop/potentials.hpp"

using namespace rmprop;

namespace {
PhysicalParams units(double G, double kappa, int l) {
  PhysicalParams p;
  p.hbar = 1.0;
  p.mu = 0.5;
  p.G = G;
  p.kappa = kappa;
  p.l = l;
  return p;
}
}  // namespace

TEST(Potentials, RosenMorseValues) {
  EXPECT_NEAR(rosen_morse(pi / 2, units(1, 1, 2)), 6.0, 1e-14);
  EXPECT_NEAR(rosen_morse(pi / 4, units(1, 1, 0)), -2.0, 1e-14);
  EXPECT_NEAR(rosen_morse(3 * pi / 4, units(1, 1, 0)), 2.0, 1e-14);
}

TEST(Potentials, CentrifugalBarrierValues) {
  EXPECT_DOUBLE_EQ(centrifugal_barrier(pi / 2, units(1, 1, 1)), 2.0);
  EXPECT_NEAR(centrifugal_barrier(pi / 6, units(1, 1, 1)), 8.0, 1e-14);
  for (double chi : {0.01, 0.5, 2.0, 3.1})
    EXPECT_EQ(centrifugal_barrier(chi, units(1, 1, 0)), 0.0);
  auto p = units(0, 1, 3);
  EXPECT_EQ(centrifugal_barrier(0.8, p), rosen_morse(0.8, p));
}

TEST(Potentials, CotTermValues) {
  EXPECT_NEAR(cot_term(pi / 2, units(5, 1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(cot_term(pi / 3, units(1, 1, 0)), -2.0 / std::sqrt(3.0), 1e-15);
  for (double kappa : {0.3, 1.0, 9.0}) {
    auto p = units(1.7, kappa, 0);
    Curvature k(kappa);
    double via_chart = -2 * p.G * std::sqrt(kappa) * x4_from_chi(0.7, k) /
                       radius_from_chi(0.7, k);
    EXPECT_NEAR(cot_term(0.7, p), via_chart, 1e-13 * std::abs(via_chart));
  }
}

TEST(Potentials, EndpointsAreErrors) {
  auto p = units(1, 1, 1);
  for (double chi : {0.0, pi, -0.1, 4.0}) {
    EXPECT_THROW(rosen_morse(chi, p), DomainError);
    EXPECT_THROW(cot_term(chi, p), DomainError);
    EXPECT_THROW(centrifugal_barrier(chi, p), DomainError);
  }
  try {
    rosen_morse(0.0, p);
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("chi endpoint"), std::string::npos);
  }
}

TEST(Potentials, ParamValidation) {
  auto p = units(1, 1, 0);
  EXPECT_NO_THROW(p.validate());
  p.l = -1;
  EXPECT_THROW(p.validate(), ConfigError);
  p = units(1, 0, 0);
  EXPECT_THROW(p.validate(), ConfigError);
  p = units(1, 1, 0);
  p.hbar = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = units(1, 1, 0);
  p.mu = -1;
  EXPECT_THROW(p.validate(), ConfigError);
  EXPECT_NO_THROW(units(-3, 1, 0).validate());
  EXPECT_DOUBLE_EQ(units(1, 1, 0).propagator_amplitude(), 2.0);
}

TEST(PotentialsProperty, SymmetriesAndDecomposition) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> chi_dist(1e-3, pi - 1e-3);
  std::uniform_real_distribution<double> g_dist(-5.0, 5.0);
  std::uniform_real_distribution<double> k_dist(0.1, 10.0);
  std::uniform_int_distribution<int> l_dist(0, 6);
  for (int i = 0; i < 20000; ++i) {
    double chi = chi_dist(rng);
    auto p = units(g_dist(rng), k_dist(rng), l_dist(rng));
    double c = cot_term(chi, p), c_ref = cot_term(pi - chi, p);
    ASSERT_NEAR(c, -c_ref, 1e-12 * (1 + std::abs(c)));
    double b = centrifugal_barrier(chi, p), b_ref = centrifugal_barrier(pi - chi, p);
    ASSERT_NEAR(b, b_ref, 1e-12 * (1 + std::abs(b)));
    ASSERT_EQ(rosen_morse(chi, p), c + b);
  }
}

TEST(PotentialsProperty, CartesianIdentity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> chi_dist(0.05, pi - 0.05);
  for (int i = 0; i < 10000; ++i) {
    double chi = chi_dist(rng);
    auto p = units(1.3, 2.0, 0);
    Curvature k(p.kappa);
    double cart = -2 * p.G * std::sqrt(p.kappa) * x4_from_chi(chi, k) /
                  radius_from_chi(chi, k);
    double v = cot_term(chi, p);
    ASSERT_LE(std::abs(v - cart), 1e-13 * std::max(std::abs(cart), 1e-300))
        << chi;
  }
}
