#pragma once

// Momentum-space transform of the cot(chi) interaction over one hemisphere.
//
// With the plane wave exp(i q r cos(theta)) and r = R sin(chi), the (theta,
// phi) integration is analytic and gives 4 pi sinc(x sin chi), x = q R / hbar.
// Dividing out the 4 pi leaves
//
//   Pi_raw(q) = -2 G sqrt(kappa) (2 mu / hbar^2) R^3
//               * int_hemisphere sin(chi) cos(chi) sinc(x sin chi) dchi,
//
// and the closed form is Pi(q) = c * 2 sin^2(x/2) / x^2,
// c = 2 G (2 mu) / (hbar^2 kappa).
//
// Pi_raw on the Northern hemisphere equals -Pi(q). The library reports
// hemisphere transforms with the sign flipped (kHemisphereSign) so that the
// Northern transform is the positive closed form; the Southern transform is
// then its mirror image. sign_convention_audit recomputes this choice.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rmprop/errors.hpp"
#include "rmprop/geometry.hpp"
#include "rmprop/potentials.hpp"
#include "rmprop/quadrature.hpp"

namespace rmprop {

/// Sign applied to the raw hemisphere integral.
inline constexpr int kHemisphereSign = -1;

struct QuadratureConfig {
  int base_panels = 8;
  int panels_per_wavelength = 8;
  double abs_tol = 1e-8;
  double rel_tol = 1e-7;

  void validate() const {
    if (base_panels < 8) throw ConfigError("base_panels must be >= 8");
    if (panels_per_wavelength < 8)
      throw ConfigError("panels_per_wavelength must be >= 8");
    if (!(abs_tol > 0.0)) throw ConfigError("abs_tol must be > 0");
    if (!(rel_tol > 0.0)) throw ConfigError("rel_tol must be > 0");
  }

  /// Panels over one hemisphere for oscillation parameter x = q R / hbar.
  int panels_for(double x) const {
    double waves = std::ceil(std::abs(x) / (2.0 * pi));
    double n = std::max<double>(base_panels, panels_per_wavelength * waves);
    if (n > 1e8) throw ConfigError("momentum too large for panel quadrature");
    return static_cast<int>(n);
  }
};

/// Ascending non-negative momenta with the dimensionless x = q/(hbar sqrt(kappa)).
class MomentumGrid {
 public:
  MomentumGrid(std::vector<double> q, const PhysicalParams& p) : q_(std::move(q)) {
    p.validate();
    if (q_.empty()) throw ConfigError("momentum grid is empty");
    double unit = p.hbar * std::sqrt(p.kappa);
    for (std::size_t i = 0; i < q_.size(); ++i) {
      if (!std::isfinite(q_[i]) || q_[i] < 0.0)
        throw ConfigError("momentum grid values must be finite and >= 0");
      if (i > 0 && q_[i] < q_[i - 1])
        throw ConfigError("momentum grid must be ascending");
      x_.push_back(q_[i] / unit);
    }
  }

  static MomentumGrid linear(double q_min, double q_max, int steps,
                             const PhysicalParams& p) {
    if (steps < 1) throw ConfigError("q-steps must be >= 1");
    if (!(q_max >= q_min)) throw ConfigError("q-max must be >= q-min");
    std::vector<double> q(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
      q[static_cast<std::size_t>(i)] =
          steps == 1 ? q_min : q_min + (q_max - q_min) * i / (steps - 1);
    if (steps > 1) q.back() = q_max;
    return MomentumGrid(std::move(q), p);
  }

  /// Log-spaced in x, mapped back to q.
  static MomentumGrid log_x(double x_min, double x_max, int steps,
                            const PhysicalParams& p) {
    if (!(x_min > 0.0 && x_max > x_min) || steps < 2)
      throw ConfigError("log grid needs 0 < x_min < x_max and >= 2 steps");
    double unit = p.hbar * std::sqrt(p.kappa);
    std::vector<double> q(static_cast<std::size_t>(steps));
    double la = std::log(x_min), lb = std::log(x_max);
    for (int i = 0; i < steps; ++i)
      q[static_cast<std::size_t>(i)] =
          unit * std::exp(la + (lb - la) * i / (steps - 1));
    return MomentumGrid(std::move(q), p);
  }

  std::size_t size() const noexcept { return q_.size(); }
  const std::vector<double>& q() const noexcept { return q_; }
  const std::vector<double>& x() const noexcept { return x_; }

 private:
  std::vector<double> q_;
  std::vector<double> x_;
};

namespace detail {
inline double dimensionless_momentum(double q, const PhysicalParams& p) {
  if (!(q >= 0.0) || !std::isfinite(q))
    throw DomainError("momentum must be finite and >= 0, got " +
                      std::to_string(q));
  return q / (p.hbar * std::sqrt(p.kappa));
}
}  // namespace detail

/// Pi(q) = c 2 sin^2(x/2)/x^2 with the analytic limit c/2 at q = 0.
inline double closed_form_propagator(double q, const PhysicalParams& p) {
  p.validate();
  double x = detail::dimensionless_momentum(q, p);
  return p.propagator_amplitude() * half_versine_ratio(x);
}

/// -2 G sqrt(kappa) (2 mu/hbar^2) R^3.
inline double hemisphere_prefactor(const PhysicalParams& p) {
  double R = 1.0 / std::sqrt(p.kappa);
  return -2.0 * p.coupling_energy() * (2.0 * p.mu / (p.hbar * p.hbar)) * R * R * R;
}

struct KernelIntegral {
  double value;
  double error_estimate;
  int panels;
};

/// int sin^2(chi) cot(chi) sinc(x sin chi) dchi over one hemisphere.
/// The estimate compares `panels` against 2*`panels`.
inline KernelIntegral hemisphere_kernel_integral(double x, Hemisphere h,
                                                 const QuadratureConfig& cfg) {
  cfg.validate();
  int panels = cfg.panels_for(x);
  auto integrand = [x](double chi) {
    double s = std::sin(chi);
    return s * std::cos(chi) * sinc(x * s);
  };
  double a = h == Hemisphere::Northern ? 0.0 : pi / 2;
  double b = h == Hemisphere::Northern ? pi / 2 : pi;
  double coarse = integrate_panels(integrand, a, b, panels);
  double fine = integrate_panels(integrand, a, b, 2 * panels);
  return {fine, std::abs(fine - coarse), 2 * panels};
}

/// Hemisphere transform Pi_h(q) by quadrature, in the library sign convention.
inline double hemisphere_fourier(double q, const PhysicalParams& p, Hemisphere h,
                                 const QuadratureConfig& cfg = {}) {
  p.validate();
  double x = detail::dimensionless_momentum(q, p);
  auto k = hemisphere_kernel_integral(x, h, cfg);
  double scale = kHemisphereSign * hemisphere_prefactor(p);
  double value = scale * k.value;
  double err = std::abs(scale) * k.error_estimate;
  double allowed = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
  if (!(err <= allowed))
    throw ToleranceError("hemisphere quadrature at q = " + std::to_string(q) +
                             " has error estimate " + std::to_string(err),
                         err);
  return value;
}

struct SignAudit {
  double q_probe;
  double prefactor;        // -2 G sqrt(kappa) (2mu/hbar^2) R^3
  double kernel_integral;  // Northern chi-integral
  double raw_value;        // prefactor * kernel_integral
  double closed_form;
  double magnitude_ratio;  // |raw| / |closed|
  bool raw_sign_matches;   // sign(raw) == sign(closed)
  int derived_sign;        // sign that maps raw onto the closed form
  int frozen_sign;         // kHemisphereSign

  bool consistent() const { return derived_sign == frozen_sign; }
};

/// Recomputes the Northern integral with its factors separated and checks
/// which overall sign reproduces the closed form.
inline SignAudit sign_convention_audit(const PhysicalParams& p,
                                       const QuadratureConfig& cfg,
                                       double q_probe) {
  p.validate();
  if (!(q_probe > 0.0)) throw ConfigError("q_probe must be > 0");
  double x = detail::dimensionless_momentum(q_probe, p);
  auto k = hemisphere_kernel_integral(x, Hemisphere::Northern, cfg);
  SignAudit a{};
  a.q_probe = q_probe;
  a.prefactor = hemisphere_prefactor(p);
  a.kernel_integral = k.value;
  a.raw_value = a.prefactor * a.kernel_integral;
  a.closed_form = closed_form_propagator(q_probe, p);
  a.magnitude_ratio = std::abs(a.raw_value) / std::abs(a.closed_form);
  a.raw_sign_matches = (a.raw_value > 0.0) == (a.closed_form > 0.0);
  a.derived_sign = a.raw_sign_matches ? 1 : -1;
  a.frozen_sign = kHemisphereSign;
  return a;
}

enum class PropagatorMode { ClosedForm, Northern, Southern };

inline const char* to_string(PropagatorMode m) noexcept {
  switch (m) {
    case PropagatorMode::ClosedForm: return "closed";
    case PropagatorMode::Northern: return "north";
    case PropagatorMode::Southern: return "south";
  }
  return "?";
}

struct PropagatorCurve {
  MomentumGrid grid;
  std::vector<double> values;
  PropagatorMode mode;
  PhysicalParams params;
  std::optional<QuadratureConfig> quad;  // empty for ClosedForm
};

/// Evaluates the chosen mode at every grid node. Nodes are split over worker
/// threads; values are stored by grid index.
inline PropagatorCurve propagator_curve(const MomentumGrid& grid,
                                        const PhysicalParams& p,
                                        PropagatorMode mode,
                                        const QuadratureConfig& cfg = {}) {
  p.validate();
  if (mode != PropagatorMode::ClosedForm) cfg.validate();
  const std::size_t n = grid.size();
  std::vector<double> values(n);

  auto eval = [&](std::size_t i) {
    double q = grid.q()[i];
    try {
      switch (mode) {
        case PropagatorMode::ClosedForm: return closed_form_propagator(q, p);
        case PropagatorMode::Northern:
          return hemisphere_fourier(q, p, Hemisphere::Northern, cfg);
        case PropagatorMode::Southern:
          return hemisphere_fourier(q, p, Hemisphere::Southern, cfg);
      }
    } catch (const ToleranceError& e) {
      throw ToleranceError(std::string(e.what()) + " [grid index " +
                               std::to_string(i) + "]",
                           e.estimate());
    }
    return 0.0;
  };

  std::size_t workers =
      mode == PropagatorMode::ClosedForm
          ? 1
          : std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) values[i] = eval(i);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < n; i += workers) values[i] = eval(i);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  std::optional<QuadratureConfig> quad;
  if (mode != PropagatorMode::ClosedForm) quad = cfg;
  return {grid, std::move(values), mode, p, quad};
}

struct LimitReport {
  double ir_value;       // Pi(0) = c/2
  double first_zero_x;   // 2 pi
  double first_zero_q;   // 2 pi hbar sqrt(kappa)
  double uv_envelope;    // sup_x x^2 Pi(x) = 2c
};

inline LimitReport uv_ir_limits(const PhysicalParams& p) {
  p.validate();
  if (!(p.G > 0.0)) throw ConfigError("limit report requires G > 0");
  double c = p.propagator_amplitude();
  return {c / 2.0, 2.0 * pi, 2.0 * pi * p.hbar * std::sqrt(p.kappa), 2.0 * c};
}

/// x^2 Pi(x) = 2 c sin^2(x/2).
inline double uv_envelope(double x, const PhysicalParams& p) {
  double s = std::sin(0.5 * x);
  return 2.0 * p.propagator_amplitude() * s * s;
}

}  // namespace rmprop
