#include "bsloc/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "bsloc/error.hpp"
#include "bsloc/modes.hpp"
#include "bsloc/spectral.hpp"

namespace bsloc {

namespace {

constexpr long long kDen = 80;

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  // Uniform integer in [lo, hi].
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return range(0, 1) == 1; }
  // Odd multiple of 1/80 in [-span, span].
  Rational odd_lift(long long span) { return Rational(2 * range(-span * kDen / 2, span * kDen / 2 - 1) + 1, kDen); }

 private:
  std::mt19937_64 rng_;
};

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

HolonomyProfile ramp(Draw& d, const Rational& ua, const Rational& ub) {
  std::vector<ProfileSample> s;
  double x = 0.0;
  s.push_back({x, Winding(ua)});
  long long inner = d.range(0, 2);
  for (long long i = 0; i < inner; ++i) {
    x += 0.5 * static_cast<double>(d.range(1, 4));
    s.push_back({x, Winding(d.odd_lift(3))});
  }
  x += 0.5 * static_cast<double>(d.range(1, 4));
  s.push_back({x, Winding(ub)});
  return HolonomyProfile(std::move(s));
}

struct Builder {
  Draw& d;
  SurfaceAssembly a;
  std::vector<BoundaryRef> open;

  Rational lift(const BoundaryRef& r) const { return a.pieces[r.piece].boundary_lift(r.circle).exact(); }

  std::size_t add(Piece p) {
    a.pieces.push_back(std::move(p));
    return a.pieces.size() - 1;
  }

  BoundaryRef take(std::size_t i) {
    BoundaryRef r = open[i];
    open.erase(open.begin() + static_cast<long>(i));
    return r;
  }

  // Annulus whose circle 0 closes a circle with lift l.
  void attach_annulus(const BoundaryRef& c) {
    Rational ua = lift(c) + d.range(-2, 2);
    std::size_t p = add(Piece::annulus(ramp(d, ua, d.odd_lift(3))));
    a.gluings.push_back({c, {p, 0}});
    open.push_back({p, 1});
  }

  void attach_disk(const BoundaryRef& c) {
    Rational ue = -lift(c) + d.range(-2, 2);
    std::vector<ProfileSample> s{{0.0, Winding(Rational(0))}};
    if (d.coin()) s.push_back({0.5, Winding(d.odd_lift(2))});
    s.push_back({1.0, Winding(ue)});
    std::size_t p = add(Piece::disk(HolonomyProfile(std::move(s))));
    a.gluings.push_back({c, {p, 0}});
  }

  bool attach_pants(const BoundaryRef& c) {
    Rational l1 = frac(-lift(c));
    for (int attempt = 0; attempt < 16; ++attempt) {
      long long k = d.range(1, 2);
      Rational l2(d.range(1, kDen - 1), kDen);
      Rational l3 = Rational(k) - l1 - l2;
      if (l3 <= 0 || l3 >= 1) continue;
      std::size_t p = add(Piece::pants(Winding(l1), Winding(l2), Winding(l3)));
      a.gluings.push_back({c, {p, 0}});
      open.push_back({p, 1});
      open.push_back({p, 2});
      return true;
    }
    return false;
  }

  // Annulus joining two open circles with lifts l1 and l2.
  void join(const BoundaryRef& c1, const BoundaryRef& c2) {
    Rational ua = lift(c1) + d.range(-2, 2);
    Rational ub = -lift(c2) + d.range(-2, 2);
    std::size_t p = add(Piece::annulus(ramp(d, ua, ub)));
    a.gluings.push_back({c1, {p, 0}});
    a.gluings.push_back({c2, {p, 1}});
  }
};

}  // namespace

std::uint64_t case_seed(std::uint64_t run_seed, std::uint64_t i) {
  return splitmix(splitmix(run_seed) ^ (i * 0xd1b54a32d192ed03ULL));
}

SurfaceAssembly generate_random_assembly(std::uint64_t seed, int size) {
  if (size < 1) throw Error(ErrorCode::InputError, "assembly size must be >= 1");
  Draw d(seed);
  Builder b{d, {}, {}};

  if (size == 1) {
    Rational ua = d.odd_lift(2);
    std::size_t p = b.add(Piece::annulus(ramp(d, ua, ua + d.range(-3, 3))));
    b.a.gluings.push_back({{p, 0}, {p, 1}});
    return b.a;
  }

  switch (d.range(0, 2)) {
    case 0: {
      std::vector<ProfileSample> s{{0.0, Winding(Rational(0))}, {1.0, Winding(d.odd_lift(2))}};
      std::size_t p = b.add(Piece::disk(HolonomyProfile(std::move(s))));
      b.open.push_back({p, 0});
      break;
    }
    case 1: {
      std::size_t p = b.add(Piece::annulus(ramp(d, d.odd_lift(3), d.odd_lift(3))));
      b.open.push_back({p, 0});
      b.open.push_back({p, 1});
      break;
    }
    default: {
      Rational l1(2 * d.range(0, kDen / 2 - 1) + 1, kDen);
      Rational l2(2 * d.range(0, kDen / 2 - 1) + 1, kDen);
      long long k = l1 + l2 < 1 ? 1 : 2;
      Rational l3 = Rational(k) - l1 - l2;
      if (l3 <= 0 || l3 >= 1) {
        k = 3 - k;
        l3 = Rational(k) - l1 - l2;
      }
      if (l3 <= 0 || l3 >= 1 || denominator(l3) == 1) {
        l1 = Rational(1, 4);
        l2 = Rational(1, 4);
        l3 = Rational(1, 2);
      }
      std::size_t p = b.add(Piece::pants(Winding(l1), Winding(l2), Winding(l3)));
      for (int c = 0; c < 3; ++c) b.open.push_back({p, c});
      break;
    }
  }

  while (b.a.pieces.size() + b.open.size() < static_cast<std::size_t>(size)) {
    std::size_t i = static_cast<std::size_t>(d.range(0, static_cast<long long>(b.open.size()) - 1));
    switch (d.range(0, 4)) {
      case 0:
      case 1: {
        BoundaryRef c = b.take(i);
        if (!b.attach_pants(c)) b.attach_annulus(c);
        break;
      }
      case 2:
        b.attach_annulus(b.take(i));
        break;
      case 3:
        if (b.open.size() >= 3) {
          BoundaryRef c1 = b.take(i);
          BoundaryRef c2 = b.take(static_cast<std::size_t>(d.range(0, static_cast<long long>(b.open.size()) - 1)));
          b.join(c1, c2);
        } else {
          b.attach_annulus(b.take(i));
        }
        break;
      default:
        if (b.open.size() >= 2) b.attach_disk(b.take(i));
        else b.attach_annulus(b.take(i));
        break;
    }
  }

  while (!b.open.empty()) {
    if (b.open.size() >= 2 && d.coin()) {
      BoundaryRef c1 = b.take(0);
      BoundaryRef c2 = b.take(static_cast<std::size_t>(d.range(0, static_cast<long long>(b.open.size()) - 1)));
      b.join(c1, c2);
    } else {
      b.attach_disk(b.take(static_cast<std::size_t>(d.range(0, static_cast<long long>(b.open.size()) - 1))));
    }
  }
  return b.a;
}

HolonomyProfile generate_random_profile(std::uint64_t seed) {
  Draw d(seed);
  std::vector<ProfileSample> s;
  long long n = d.range(2, 6);
  double x = 0.0;
  for (long long i = 0; i < n; ++i) {
    s.push_back({x, Winding(d.odd_lift(3))});
    x += 0.5 * static_cast<double>(d.range(1, 4));
  }
  return HolonomyProfile(std::move(s));
}

std::optional<long long> spectral_annulus_index(const HolonomyProfile& p, double t) {
  // The index does not depend on t or on the padding, so an unresolved
  // attempt is repeated with larger t and a longer padded domain.
  for (double tf : {1.0, 2.0, 4.0}) {
    for (double pf : {1.0, 2.0, 4.0}) {
      CylinderModel m{p, t * tf};
      GridSpec g;
      g.padding = pf * minimum_padding(m);
      g.n_x = suggested_cells(m, g.padding);
      try {
        return compute_index(assemble(m, g)).index;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Unresolved) throw;
      }
    }
  }
  return std::nullopt;
}

int FuzzSummary::failures() const {
  int f = 0;
  for (const auto& c : cases)
    if (!c.check.pass || c.annuli_mode_agree != c.annuli || c.spectral_agree != c.spectral_checked) ++f;
  return f;
}

namespace {

FuzzCase run_case(const FuzzOptions& opt, std::uint64_t i) {
  FuzzCase fc;
  fc.seed = case_seed(opt.seed, i);
  int size = 1 + static_cast<int>(fc.seed % static_cast<std::uint64_t>(std::max(1, opt.max_size)));
  SurfaceAssembly a = generate_random_assembly(fc.seed, size);
  fc.pieces = static_cast<int>(a.pieces.size());
  fc.check = rr_cross_check(a);
  bool spectral = static_cast<long long>(i) < opt.spectral_samples;
  for (const auto& p : a.pieces) {
    if (p.kind() != PieceKind::Annulus) continue;
    ++fc.annuli;
    long long surface = local_index(p);
    if (count_kernel_modes(CylinderModel{p.profile(), 10.0}).index == surface) ++fc.annuli_mode_agree;
    if (spectral) {
      spectral = false;
      ++fc.spectral_checked;
      auto k = spectral_annulus_index(p.profile());
      if (k && *k == surface) ++fc.spectral_agree;
    }
  }
  return fc;
}

}  // namespace

FuzzSummary run_fuzz_serial(const FuzzOptions& opt) {
  FuzzSummary s;
  for (int i = 0; i < opt.count; ++i) s.cases.push_back(run_case(opt, static_cast<std::uint64_t>(i)));
  return s;
}

FuzzSummary run_fuzz(const FuzzOptions& opt) {
  FuzzSummary s;
  s.cases.resize(static_cast<std::size_t>(std::max(0, opt.count)));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < opt.count; ++i) {
    try {
      s.cases[static_cast<std::size_t>(i)] = run_case(opt, static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return s;
}

}  // namespace bsloc
