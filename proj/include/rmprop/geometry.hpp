#pragma once

// Charts on the 3-sphere x4^2 + |r|^2 = R^2 embedded in E4.
// chi is the canonical coordinate: |r| = R sin(chi), x4 = R cos(chi).

#include <cmath>
#include <numbers>
#include <string>

#include "rmprop/errors.hpp"

namespace rmprop {

inline constexpr double pi = std::numbers::pi;

/// Constant positive curvature kappa = 1/R^2.
class Curvature {
 public:
  explicit Curvature(double kappa) : kappa_(kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
      throw ConfigError("kappa must be finite and > 0, got " +
                        std::to_string(kappa));
  }

  double kappa() const noexcept { return kappa_; }
  double sqrt_kappa() const noexcept { return std::sqrt(kappa_); }
  double radius() const noexcept { return 1.0 / std::sqrt(kappa_); }

 private:
  double kappa_;
};

enum class Hemisphere { Northern, Southern };

inline const char* to_string(Hemisphere h) noexcept {
  return h == Hemisphere::Northern ? "north" : "south";
}

namespace detail {
inline void check_chi_closed(double chi) {
  if (!(chi >= 0.0 && chi <= pi))
    throw DomainError("chi must lie in [0, pi], got " + std::to_string(chi));
}
}  // namespace detail

/// Hemisphere containing chi. The equator chi = pi/2 is Northern.
inline Hemisphere hemisphere_of(double chi) {
  detail::check_chi_closed(chi);
  return chi <= pi / 2 ? Hemisphere::Northern : Hemisphere::Southern;
}

/// |r| = sin(chi)/sqrt(kappa).
inline double radius_from_chi(double chi, Curvature k) {
  detail::check_chi_closed(chi);
  return std::sin(chi) / k.sqrt_kappa();
}

/// x4 = cos(chi)/sqrt(kappa).
inline double x4_from_chi(double chi, Curvature k) {
  detail::check_chi_closed(chi);
  return std::cos(chi) / k.sqrt_kappa();
}

/// Inverse of radius_from_chi on the requested hemisphere.
inline double chi_from_radius(double r, Curvature k, Hemisphere h) {
  if (!(r >= 0.0))
    throw DomainError("radius must be >= 0, got " + std::to_string(r));
  double s = r * k.sqrt_kappa();
  if (s > 1.0)
    throw DomainError("radius " + std::to_string(r) +
                      " exceeds the sphere radius " +
                      std::to_string(k.radius()));
  double north = std::asin(s);
  return h == Hemisphere::Northern ? north : pi - north;
}

/// Point on S^3 in hyperspherical angles.
struct SpherePoint {
  double chi = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  SpherePoint() = default;
  SpherePoint(double chi_, double theta_, double phi_)
      : chi(chi_), theta(theta_), phi(phi_) {
    detail::check_chi_closed(chi);
    if (!(theta >= 0.0 && theta <= pi))
      throw DomainError("theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < 2 * pi))
      throw DomainError("phi must lie in [0, 2pi)");
  }

  double radius(Curvature k) const { return radius_from_chi(chi, k); }
  double x4(Curvature k) const { return x4_from_chi(chi, k); }
  Hemisphere hemisphere() const { return hemisphere_of(chi); }
};

}  // namespace rmprop
