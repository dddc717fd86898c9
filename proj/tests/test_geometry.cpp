#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rmprop/geometry.hpp"

using namespace rmprop;

TEST(Geometry, CurvatureRadius) {
  for (double k : {0.25, 1.0, 4.0, 3.7}) {
    Curvature c(k);
    EXPECT_NEAR(c.kappa() * c.radius() * c.radius(), 1.0, 4e-16);
  }
  EXPECT_THROW(Curvature(0.0), ConfigError);
  EXPECT_THROW(Curvature(-1.0), ConfigError);
  EXPECT_THROW(Curvature(std::numeric_limits<double>::quiet_NaN()), ConfigError);
}

TEST(Geometry, RadiusFromChi) {
  EXPECT_DOUBLE_EQ(radius_from_chi(pi / 2, Curvature(1.0)), 1.0);
  EXPECT_EQ(radius_from_chi(0.0, Curvature(4.0)), 0.0);
  EXPECT_NEAR(radius_from_chi(pi / 6, Curvature(1.0)), 0.5, 1e-16);
  EXPECT_THROW(radius_from_chi(-0.1, Curvature(1.0)), DomainError);
  EXPECT_THROW(radius_from_chi(pi + 0.1, Curvature(1.0)), DomainError);
}

TEST(Geometry, X4FromChi) {
  EXPECT_DOUBLE_EQ(x4_from_chi(0.0, Curvature(1.0)), 1.0);
  EXPECT_NEAR(x4_from_chi(pi / 2, Curvature(1.0)), 0.0, 1e-16);
  EXPECT_DOUBLE_EQ(x4_from_chi(pi, Curvature(0.25)), -2.0);
  EXPECT_THROW(x4_from_chi(4.0, Curvature(1.0)), DomainError);
}

TEST(Geometry, ChiFromRadius) {
  EXPECT_DOUBLE_EQ(chi_from_radius(1.0, Curvature(1.0), Hemisphere::Northern), pi / 2);
  EXPECT_NEAR(chi_from_radius(0.5, Curvature(1.0), Hemisphere::Southern),
              5 * pi / 6, 1e-15);
  EXPECT_THROW(chi_from_radius(1.1, Curvature(1.0), Hemisphere::Northern),
               DomainError);
  EXPECT_THROW(chi_from_radius(1.1, Curvature(1.0), Hemisphere::Southern),
               DomainError);
  EXPECT_THROW(chi_from_radius(-0.1, Curvature(1.0), Hemisphere::Northern),
               DomainError);
}

TEST(Geometry, EquatorIsNorthern) {
  EXPECT_EQ(hemisphere_of(pi / 2), Hemisphere::Northern);
  EXPECT_EQ(hemisphere_of(0.0), Hemisphere::Northern);
  EXPECT_EQ(hemisphere_of(pi), Hemisphere::Southern);
}

TEST(Geometry, SpherePointValidation) {
  EXPECT_NO_THROW(SpherePoint(1.0, 0.5, 6.0));
  EXPECT_THROW(SpherePoint(1.0, 3.5, 0.0), DomainError);
  EXPECT_THROW(SpherePoint(1.0, 0.5, 2 * pi), DomainError);
  EXPECT_THROW(SpherePoint(-1.0, 0.5, 0.0), DomainError);
}

// Randomized properties over many points and curvatures.
TEST(GeometryProperty, EmbeddingAndRoundTrip) {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> chi_dist(0.0, pi);
  std::uniform_real_distribution<double> logk(-3.0, 3.0);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 20000; ++i) {
    double chi = chi_dist(rng);
    Curvature k(std::exp(logk(rng)));
    SpherePoint pt(chi, 0.3, 1.2);
    double r = pt.radius(k), x4 = pt.x4(k), R = k.radius();
    ASSERT_LE(std::abs(x4 * x4 + r * r - R * R), 8 * eps * R * R) << chi;
    ASSERT_GE(r, 0.0);
    ASSERT_LE(r, R);

    Hemisphere h = pt.hemisphere();
    if (chi != pi / 2) {
      ASSERT_EQ(x4 > 0.0, h == Hemisphere::Northern) << chi;
    }
    // Near the equator asin loses half the digits: |d chi| ~ sqrt(eps).
    double back = chi_from_radius(r, k, h);
    ASSERT_NEAR(back, chi, 1e-7) << "chi = " << chi;
  }
}

TEST(GeometryProperty, RoundTripAwayFromEquator) {
  // asin is ill-conditioned at |r| = R; away from the equator the chart
  // inverts to 1e-12.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> north(0.0, pi / 2 - 1e-3);
  for (int i = 0; i < 10000; ++i) {
    double chi = north(rng);
    Curvature k(2.5);
    EXPECT_NEAR(chi_from_radius(radius_from_chi(chi, k), k, Hemisphere::Northern),
                chi, 1e-12);
    double south = pi - chi;
    EXPECT_NEAR(chi_from_radius(radius_from_chi(south, k), k, Hemisphere::Southern),
                south, 1e-12);
  }
}
