#pragma once

// Trigonometric Rosen-Morse potential on S^3 as a function of chi:
//   V(chi) = -2 G sqrt(kappa) cot(chi) + kappa hbar^2/(2 mu) l(l+1) / sin^2(chi)
// with zero additive constant.

#include <cmath>
#include <cstdio>
#include <string>

#include "rmprop/errors.hpp"
#include "rmprop/geometry.hpp"

namespace rmprop {

/// Physical constants of one problem. G carries units energy*length so that
/// G*sqrt(kappa) is an energy.
struct PhysicalParams {
  double hbar = 1.0;
  double mu = 0.5;
  double G = 1.0;
  double kappa = 1.0;
  int l = 0;

  void validate() const {
    if (!(hbar > 0.0) || !std::isfinite(hbar))
      throw ConfigError("hbar must be finite and > 0");
    if (!(mu > 0.0) || !std::isfinite(mu))
      throw ConfigError("mu must be finite and > 0");
    if (!std::isfinite(G)) throw ConfigError("G must be finite");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
      throw ConfigError("kappa must be finite and > 0");
    if (l < 0) throw ConfigError("l must be >= 0");
  }

  Curvature curvature() const { return Curvature(kappa); }

  /// kappa * hbar^2 / (2 mu): the kinetic energy scale of the chi equation.
  double energy_scale() const { return kappa * hbar * hbar / (2.0 * mu); }

  /// Strength of the cot term, B = G sqrt(kappa).
  double coupling_energy() const { return G * std::sqrt(kappa); }

  /// Momentum-space amplitude c = 2 G (2 mu) / (hbar^2 kappa).
  double propagator_amplitude() const {
    return 2.0 * G * (2.0 * mu) / (hbar * hbar * kappa);
  }

  PhysicalParams with_l(int new_l) const {
    PhysicalParams p = *this;
    p.l = new_l;
    return p;
  }
};

struct PotentialSample {
  double chi;
  double value;
};

namespace detail {
inline std::string format_angle(double chi) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", chi);
  return buf;
}

inline void check_chi_open(double chi) {
  if (!(chi > 0.0 && chi < pi))
    throw DomainError("chi endpoint: potential is singular outside (0, pi), "
                      "got chi = " + format_angle(chi));
}
}  // namespace detail

/// -2 G sqrt(kappa) cot(chi).
inline double cot_term(double chi, const PhysicalParams& p) {
  detail::check_chi_open(chi);
  return -2.0 * p.coupling_energy() * std::cos(chi) / std::sin(chi);
}

/// kappa hbar^2/(2 mu) l(l+1) csc^2(chi).
inline double centrifugal_barrier(double chi, const PhysicalParams& p) {
  detail::check_chi_open(chi);
  if (p.l == 0) return 0.0;
  double s = std::sin(chi);
  double ll = static_cast<double>(p.l) * (p.l + 1);
  return p.energy_scale() * ll / (s * s);
}

inline double rosen_morse(double chi, const PhysicalParams& p) {
  return cot_term(chi, p) + centrifugal_barrier(chi, p);
}

inline PotentialSample sample_rosen_morse(double chi, const PhysicalParams& p) {
  return {chi, rosen_morse(chi, p)};
}

}  // namespace rmprop
