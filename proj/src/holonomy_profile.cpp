#include "bsloc/holonomy_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsloc/error.hpp"

namespace bsloc {

namespace {

void check_samples(const std::vector<ProfileSample>& s) {
  if (s.size() < 2) throw Error(ErrorCode::InvalidProfile, "a profile needs at least 2 samples");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i].x)) throw Error(ErrorCode::InvalidProfile, "non-finite x");
    if (i > 0 && !(s[i].x > s[i - 1].x))
      throw Error(ErrorCode::InvalidProfile, "x must be strictly increasing");
  }
}

}  // namespace

HolonomyProfile::HolonomyProfile(std::vector<ProfileSample> samples) : samples_(std::move(samples)) {
  check_samples(samples_);
}

HolonomyProfile::HolonomyProfile(std::initializer_list<std::pair<double, double>> xu) {
  for (auto [x, u] : xu) samples_.push_back({x, Winding(u)});
  check_samples(samples_);
}

double HolonomyProfile::u_min() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : samples_) m = std::min(m, s.u.value());
  return m;
}

double HolonomyProfile::u_max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples_) m = std::max(m, s.u.value());
  return m;
}

double HolonomyProfile::operator()(double x) const {
  if (x <= x_min()) return u_in().value();
  if (x >= x_max()) return u_out().value();
  auto it = std::upper_bound(samples_.begin(), samples_.end(), x,
                             [](double v, const ProfileSample& s) { return v < s.x; });
  const auto& b = *it;
  const auto& a = *(it - 1);
  double w = (x - a.x) / (b.x - a.x);
  return (1.0 - w) * a.u.value() + w * b.u.value();
}

double HolonomyProfile::integral(double a, double b) const {
  // Antiderivative measured from x_min, with constant extension outside.
  auto F = [this](double x) {
    if (x <= x_min()) return (x - x_min()) * u_in().value();
    double acc = 0.0;
    for (std::size_t i = 1; i < samples_.size(); ++i) {
      const auto& s0 = samples_[i - 1];
      const auto& s1 = samples_[i];
      if (x <= s1.x) {
        double ux = (*this)(x);
        return acc + 0.5 * (s0.u.value() + ux) * (x - s0.x);
      }
      acc += 0.5 * (s0.u.value() + s1.u.value()) * (s1.x - s0.x);
    }
    return acc + (x - x_max()) * u_out().value();
  };
  return F(b) - F(a);
}

bool HolonomyProfile::flat_on_margins(double margin) const {
  if (margin <= 0.0) return true;
  if (2.0 * margin > x_max() - x_min()) return false;
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (samples_[i].u != u_in()) return false;
    if (samples_[i].x >= x_min() + margin) break;
  }
  for (std::size_t i = samples_.size() - 1; i-- > 0;) {
    if (samples_[i].u != u_out()) return false;
    if (samples_[i].x <= x_max() - margin) break;
  }
  return true;
}

std::vector<BsInterval> HolonomyProfile::bs_set() const {
  std::vector<BsInterval> out;
  auto push = [&out](double lo, double hi) {
    if (!out.empty() && lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, hi);
      return;
    }
    out.push_back({lo, hi});
  };
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    const auto& s0 = samples_[i - 1];
    const auto& s1 = samples_[i];
    if (s0.u == s1.u) {
      if (boost::multiprecision::denominator(s0.u.exact()) == 1) push(s0.x, s1.x);
      continue;
    }
    const Rational& lo = s0.u < s1.u ? s0.u.exact() : s1.u.exact();
    const Rational& hi = s0.u < s1.u ? s1.u.exact() : s0.u.exact();
    BigInt k = -floor(Rational(-lo));  // ceil(lo)
    BigInt top = floor(hi);
    std::vector<double> xs;
    for (; k <= top; ++k) {
      Rational w = (Rational(k) - s0.u.exact()) / (s1.u.exact() - s0.u.exact());
      xs.push_back(s0.x + w.convert_to<double>() * (s1.x - s0.x));
    }
    std::sort(xs.begin(), xs.end());
    for (double x : xs) push(x, x);
  }
  return out;
}

HolonomyProfile HolonomyProfile::reversed() const {
  std::vector<ProfileSample> r;
  r.reserve(samples_.size());
  for (auto it = samples_.rbegin(); it != samples_.rend(); ++it) r.push_back({-it->x, it->u});
  return HolonomyProfile(std::move(r));
}

HolonomyProfile HolonomyProfile::shifted(long long k) const {
  std::vector<ProfileSample> r = samples_;
  for (auto& s : r) s.u = s.u + Winding(Rational(k));
  return HolonomyProfile(std::move(r));
}

long long signed_bs_count(const HolonomyProfile& p, double tol) {
  if (on_lattice(p.u_in().exact(), tol) || on_lattice(p.u_out().exact(), tol))
    throw Error(ErrorCode::EndpointOnLattice, "profile end value is a Bohr-Sommerfeld fiber");
  return to_int64(floor(p.u_out().exact()) - floor(p.u_in().exact()));
}

HolonomyProfile concatenate(const HolonomyProfile& p, const HolonomyProfile& q) {
  if (p.u_out() != q.u_in())
    throw Error(ErrorCode::InvalidProfile, "concatenation needs matching lift values");
  std::vector<ProfileSample> s = p.samples();
  double offset = p.x_max() - q.x_min();
  for (std::size_t i = 1; i < q.samples().size(); ++i)
    s.push_back({q.samples()[i].x + offset, q.samples()[i].u});
  return HolonomyProfile(std::move(s));
}

double distance_to_set(const std::vector<BsInterval>& set, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : set) {
    double d = x < iv.lo ? iv.lo - x : (x > iv.hi ? x - iv.hi : 0.0);
    best = std::min(best, d);
  }
  return best;
}

}  // namespace bsloc
