#include "bsloc/modes.hpp"

#include <cmath>

#include "bsloc/error.hpp"

namespace bsloc {

void CylinderModel::validate(double tol) const {
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidProfile, "deformation parameter must be >= 0");
  if (on_lattice(profile.u_in().exact(), tol) || on_lattice(profile.u_out().exact(), tol))
    throw Error(ErrorCode::EndpointOnLattice, "cylinder end fiber is Bohr-Sommerfeld");
}

ModeKernelReport count_kernel_modes(const CylinderModel& m, double tol) {
  m.validate(tol);
  const Rational& rho_in = m.profile.u_in().exact();
  const Rational& rho_out = m.profile.u_out().exact();
  long long lo = static_cast<long long>(std::floor(m.profile.u_min())) - 1;
  long long hi = static_cast<long long>(std::ceil(m.profile.u_max())) + 1;

  ModeKernelReport r;
  for (long long n = lo; n <= hi; ++n) {
    // Exponent slopes on the flat margins: (1+t)(n - rho_end). The even
    // solution exp(E) decays toward +inf iff the right slope is negative and
    // toward -inf iff the left slope is positive; the odd solution exp(-E)
    // needs the opposite signs.
    Rational right = Rational(n) - rho_out;
    Rational left = Rational(n) - rho_in;
    if (right < 0 && left > 0) r.even_modes.push_back(n);
    if (right > 0 && left < 0) r.odd_modes.push_back(n);
  }
  r.index = static_cast<long long>(r.even_modes.size()) - static_cast<long long>(r.odd_modes.size());
  return r;
}

double mode_exponent(const CylinderModel& m, long long n, double x) {
  if (!(x >= m.profile.x_min() && x <= m.profile.x_max()))
    throw Error(ErrorCode::OutOfDomain, "x outside the cylinder model");
  double x0 = m.profile.x_min();
  return (1.0 + m.t) * (static_cast<double>(n) * (x - x0) - m.profile.integral(x0, x));
}

long long disk_local_index(const Winding& boundary_u, double tol) {
  if (on_lattice(boundary_u.exact(), tol))
    throw Error(ErrorCode::LatticeBoundary, "disk boundary fiber is Bohr-Sommerfeld");
  return 1 + to_int64(floor(boundary_u.exact()));
}

}  // namespace bsloc
