#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace rmprop {

/// Nodes and weights of the N-point Gauss-Legendre rule on [-1, 1].
template <std::size_t N>
struct GaussLegendre {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussLegendre() {
    for (std::size_t i = 0; i < (N + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= N; ++k) {
          double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        if constexpr (N == 1) p0 = 1.0;
        dp = N * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      // Re-evaluate the derivative at the converged node.
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= N; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = N * (x * p1 - p0) / (x * x - 1.0);
      double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[N - 1 - i] = x;
      weights[i] = w;
      weights[N - 1 - i] = w;
    }
  }

  static const GaussLegendre& instance() {
    static const GaussLegendre rule;
    return rule;
  }
};

/// Composite Gauss-Legendre over `panels` equal sub-intervals of [a, b].
template <std::size_t Order = 16, class F>
double integrate_panels(F&& f, double a, double b, int panels) {
  const auto& rule = GaussLegendre<Order>::instance();
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    double lo = a + k * width;
    double mid = lo + 0.5 * width;
    double panel = 0.0;
    for (std::size_t i = 0; i < Order; ++i)
      panel += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    total += 0.5 * width * panel;
  }
  return total;
}

/// sin(t)/t, with a Taylor branch near the removable singularity.
inline double sinc(double t) {
  if (std::abs(t) < 1e-4) {
    double t2 = t * t;
    return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
  }
  return std::sin(t) / t;
}

/// (1 - cos x)/x^2 = 2 sin^2(x/2)/x^2, with a Taylor branch near x = 0.
inline double half_versine_ratio(double x) {
  if (std::abs(x) < 1e-4) {
    double x2 = x * x;
    return 0.5 - x2 / 24.0 + x2 * x2 / 720.0;
  }
  double s = std::sin(0.5 * x);
  return 2.0 * s * s / (x * x);
}

}  // namespace rmprop
