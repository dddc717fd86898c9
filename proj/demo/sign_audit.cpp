// Prints the hemisphere sign check as a markdown table.

#include <cstdio>

#include "rmprop/momentum.hpp"

int main() {
  using namespace rmprop;
  std::printf("| q | prefactor | kernel integral | raw | closed form | magnitude ratio | derived sign | frozen sign |\n");
  std::printf("|---|---|---|---|---|---|---|---|\n");
  PhysicalParams p;
  bool ok = true;
  for (double q : {0.01, 0.5, 1.0, 3.0, 7.5, 20.0}) {
    auto a = sign_convention_audit(p, QuadratureConfig{}, q);
    ok = ok && a.consistent();
    std::printf("| %g | %.6g | %.12g | %.12g | %.12g | %.15g | %+d | %+d |\n", q,
                a.prefactor, a.kernel_integral, a.raw_value, a.closed_form,
                a.magnitude_ratio, a.derived_sign, a.frozen_sign);
  }
  return ok ? 0 : 1;
}
