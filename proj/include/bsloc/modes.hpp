#pragma once

#include <vector>

#include "bsloc/holonomy_profile.hpp"

namespace bsloc {

/// Deformed operator on a cylinder R x S^1 with connection d - i rho(x) d theta.
/// The profile's flat end values stand in for the asymptotic regime.
struct CylinderModel {
  HolonomyProfile profile;
  double t = 0.0;

  void validate(double tol = kLatticeTol) const;
};

struct ModeKernelReport {
  std::vector<long long> even_modes;
  std::vector<long long> odd_modes;
  long long index = 0;
};

/// Fourier modes n whose kernel solution a_n = exp(+-(1+t) int (n - rho)) is
/// square integrable. Even: rho_in < n < rho_out; odd: the reverse.
ModeKernelReport count_kernel_modes(const CylinderModel& m, double tol = kLatticeTol);

/// (1+t) * int_{x_min}^{x} (n - rho(s)) ds, exact for piecewise-linear rho.
double mode_exponent(const CylinderModel& m, long long n, double x);

/// Local index of a disk whose lift starts at 0 at the center.
long long disk_local_index(const Winding& boundary_u, double tol = kLatticeTol);

}  // namespace bsloc
