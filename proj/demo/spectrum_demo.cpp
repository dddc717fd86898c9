// Lowest levels of the S-equation for l = 0..3, grouped by n = l + k,
// next to the exact levels a n^2 - B^2/(a n^2).

#include <cstdio>

#include "rmprop/operators.hpp"

int main() {
  rmprop::PhysicalParams p;  // hbar = 1, 2mu = 1, kappa = 1, G = 1
  const double a = p.energy_scale();
  const double B = p.coupling_energy();

  auto report = rmprop::degeneracy_report(p, 3, rmprop::ChiGrid(1600));

  std::printf("%3s %3s %3s %22s %22s\n", "n", "l", "idx", "eigenvalue", "exact");
  for (const auto& e : report.entries) {
    double exact = a * e.n * e.n - B * B / (a * e.n * e.n);
    std::printf("%3d %3d %3d %22.15f %22.15f\n", e.n, e.l, e.level_index, e.eigenvalue,
                exact);
  }
  std::printf("\nrelative spread across l at fixed n:\n");
  for (const auto& s : report.spreads)
    std::printf("  n = %d  multiplicity %d  spread %.3e\n", s.n, s.multiplicity, s.spread);
}
