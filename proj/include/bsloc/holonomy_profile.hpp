#pragma once

#include <vector>

#include "bsloc/winding.hpp"

namespace bsloc {

struct ProfileSample {
  double x;
  Winding u;
};

/// Closed interval of base points whose fiber is Bohr-Sommerfeld. Isolated
/// crossings have lo == hi.
struct BsInterval {
  double lo;
  double hi;
};

/// Continuous lift of fiberwise holonomy over a base interval, piecewise linear
/// between samples. Lifts are stored raw and are never renormalized.
class HolonomyProfile {
 public:
  explicit HolonomyProfile(std::vector<ProfileSample> samples);
  HolonomyProfile(std::initializer_list<std::pair<double, double>> xu);

  const std::vector<ProfileSample>& samples() const { return samples_; }
  double x_min() const { return samples_.front().x; }
  double x_max() const { return samples_.back().x; }
  const Winding& u_in() const { return samples_.front().u; }
  const Winding& u_out() const { return samples_.back().u; }
  double u_min() const;
  double u_max() const;

  /// Linear interpolation; clamps to the end values outside [x_min, x_max].
  double operator()(double x) const;

  /// Exact integral of u over [a, b] (trapezoid rule on the linear pieces),
  /// with the clamped extension outside the sample range.
  double integral(double a, double b) const;

  /// True when u is constant on [x_min, x_min + margin] and [x_max - margin, x_max].
  bool flat_on_margins(double margin) const;

  /// Points (and flat stretches) where the lift is an integer.
  std::vector<BsInterval> bs_set() const;

  HolonomyProfile reversed() const;
  HolonomyProfile shifted(long long k) const;

 private:
  std::vector<ProfileSample> samples_;
};

/// floor(u_out) - floor(u_in): upward minus downward integer crossings.
/// Throws EndpointOnLattice when an end value is within tol of an integer.
long long signed_bs_count(const HolonomyProfile& p, double tol = kLatticeTol);

/// Join p then q; q is translated in x so that it starts where p ends.
/// Requires p.u_out() == q.u_in().
HolonomyProfile concatenate(const HolonomyProfile& p, const HolonomyProfile& q);

/// Distance from x to the nearest point of the set; +inf if the set is empty.
double distance_to_set(const std::vector<BsInterval>& set, double x);

}  // namespace bsloc
