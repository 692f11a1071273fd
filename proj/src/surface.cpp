#include "bsloc/surface.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bsloc/error.hpp"

namespace bsloc {

const char* to_string(PieceKind kind) {
  switch (kind) {
    case PieceKind::Annulus: return "annulus";
    case PieceKind::Disk: return "disk";
    case PieceKind::Pants: return "pants";
  }
  return "unknown";
}

Piece Piece::annulus(HolonomyProfile profile, double margin) {
  Piece p;
  p.kind_ = PieceKind::Annulus;
  p.profile_ = std::move(profile);
  p.margin_ = margin;
  return p;
}

Piece Piece::disk(HolonomyProfile profile, double margin) {
  Piece p;
  p.kind_ = PieceKind::Disk;
  p.profile_ = std::move(profile);
  p.margin_ = margin;
  return p;
}

Piece Piece::pants(Winding l1, Winding l2, Winding l3) {
  Piece p;
  p.kind_ = PieceKind::Pants;
  p.lifts_ = {std::move(l1), std::move(l2), std::move(l3)};
  return p;
}

int Piece::boundary_count() const {
  switch (kind_) {
    case PieceKind::Annulus: return 2;
    case PieceKind::Disk: return 1;
    case PieceKind::Pants: return 3;
  }
  return 0;
}

Winding Piece::boundary_lift(int circle) const {
  if (circle < 0 || circle >= boundary_count())
    throw Error(ErrorCode::InvalidPiece, "no boundary circle b" + std::to_string(circle));
  switch (kind_) {
    case PieceKind::Annulus: return circle == 0 ? -profile_->u_in() : profile_->u_out();
    case PieceKind::Disk: return profile_->u_out();
    case PieceKind::Pants: return lifts_[static_cast<std::size_t>(circle)];
  }
  return {};
}

Rational Piece::curvature() const {
  switch (kind_) {
    case PieceKind::Annulus: return profile_->u_out().exact() - profile_->u_in().exact();
    case PieceKind::Disk: return profile_->u_out().exact();
    case PieceKind::Pants: return 0;
  }
  return 0;
}

int Piece::euler_characteristic() const {
  switch (kind_) {
    case PieceKind::Annulus: return 0;
    case PieceKind::Disk: return 1;
    case PieceKind::Pants: return -1;
  }
  return 0;
}

void Piece::validate(double tol) const {
  for (int c = 0; c < boundary_count(); ++c) {
    if (on_lattice(boundary_lift(c).exact(), tol))
      throw Error(ErrorCode::InvalidPiece, std::string(to_string(kind_)) + " boundary b" +
                                               std::to_string(c) + " has trivial holonomy");
  }
  switch (kind_) {
    case PieceKind::Annulus:
    case PieceKind::Disk:
      if (kind_ == PieceKind::Disk) {
        const auto& first = profile_->samples().front();
        if (first.x != 0.0 || first.u.exact() != 0)
          throw Error(ErrorCode::InvalidPiece, "disk profile must start at (0, 0)");
      }
      if (margin_ < 0.0 || !profile_->flat_on_margins(margin_))
        throw Error(ErrorCode::InvalidPiece, "profile is not flat on its declared margins");
      break;
    case PieceKind::Pants: {
      for (const auto& l : lifts_) {
        if (l.exact() <= 0 || l.exact() >= 1)
          throw Error(ErrorCode::InvalidPiece, "pants lifts must lie in (0, 1)");
      }
      Rational sum = lifts_[0].exact() + lifts_[1].exact() + lifts_[2].exact();
      if (!on_lattice(sum, tol))
        throw Error(ErrorCode::InvalidPiece, "pants lift sum " + format_rational(sum) +
                                                 " is not an integer");
      break;
    }
  }
}

namespace {

long long pants_sum(const Piece& p, double tol) {
  const auto& l = p.lifts();
  Rational sum = l[0].exact() + l[1].exact() + l[2].exact();
  if (!on_lattice(sum, tol)) throw Error(ErrorCode::BadSum, "pants lift sum is not an integer");
  return to_int64(nearest_integer(sum));
}

}  // namespace

long long local_index(const Piece& p, double tol) {
  p.validate(tol);
  switch (p.kind()) {
    case PieceKind::Annulus: return signed_bs_count(p.profile(), tol);
    case PieceKind::Disk: return 1 + to_int64(floor(p.profile().u_out().exact()));
    case PieceKind::Pants: return 1 - pants_sum(p, tol);
  }
  return 0;
}

std::size_t SurfaceAssembly::circle_count() const {
  std::size_t n = 0;
  for (const auto& p : pieces) n += static_cast<std::size_t>(p.boundary_count());
  return n;
}

bool SurfaceAssembly::is_closed() const { return 2 * gluings.size() == circle_count(); }

void SurfaceAssembly::validate(double tol) const {
  for (const auto& p : pieces) p.validate(tol);
  std::set<std::pair<std::size_t, int>> used;
  for (std::size_t g = 0; g < gluings.size(); ++g) {
    const auto& gl = gluings[g];
    for (const BoundaryRef& r : {gl.a, gl.b}) {
      if (r.piece >= pieces.size() || r.circle < 0 || r.circle >= pieces[r.piece].boundary_count())
        throw Error(ErrorCode::IncompatibleGluing,
                    "gluing " + std::to_string(g) + " references a missing circle");
      if (!used.insert({r.piece, r.circle}).second)
        throw Error(ErrorCode::IncompatibleGluing,
                    "circle of piece " + std::to_string(r.piece) + " glued twice");
    }
    Rational s = pieces[gl.a.piece].boundary_lift(gl.a.circle).exact() +
                 pieces[gl.b.piece].boundary_lift(gl.b.circle).exact();
    if (!on_lattice(s, tol))
      throw Error(ErrorCode::IncompatibleGluing, "gluing " + std::to_string(g) + " lift sum " +
                                                     format_rational(s) + " is not an integer");
  }
}

std::vector<std::vector<std::size_t>> SurfaceAssembly::components() const {
  std::vector<std::size_t> parent(pieces.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& g : gluings) {
    std::size_t ra = find(g.a.piece), rb = find(g.b.piece);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<long> slot(pieces.size(), -1);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return out;
}

long long sum_local_indices(const SurfaceAssembly& a, double tol) {
  long long total = 0;
  for (const auto& p : a.pieces) total += local_index(p, tol);
  return total;
}

namespace {

void require_closed(const SurfaceAssembly& a, double tol) {
  a.validate(tol);
  if (!a.is_closed())
    throw Error(ErrorCode::NotClosed, std::to_string(a.circle_count() - 2 * a.gluings.size()) +
                                          " boundary circles are not glued");
}

}  // namespace

long long total_rr(const SurfaceAssembly& a, double tol) {
  require_closed(a, tol);
  return sum_local_indices(a, tol);
}

Rational degree(const SurfaceAssembly& a, double tol) {
  require_closed(a, tol);
  Rational d = 0;
  for (const auto& p : a.pieces) d += p.curvature();
  return d;
}

long long genus(const SurfaceAssembly& a, double tol) {
  require_closed(a, tol);
  if (a.components().size() > 1)
    throw Error(ErrorCode::NotConnected, "assembly has " + std::to_string(a.components().size()) +
                                             " components");
  long long chi = 0;
  for (const auto& p : a.pieces) chi += p.euler_characteristic();
  if ((2 - chi) % 2 != 0) throw Error(ErrorCode::OddEuler, "odd Euler characteristic");
  return (2 - chi) / 2;
}

CrossCheck rr_cross_check(const SurfaceAssembly& a, double tol) {
  CrossCheck c;
  c.rr = total_rr(a, tol);
  Rational d = degree(a, tol);
  if (boost::multiprecision::denominator(d) != 1 && !on_lattice(d, tol))
    throw Error(ErrorCode::IncompatibleGluing, "degree " + format_rational(d) + " is not an integer");
  c.degree = to_int64(nearest_integer(d));
  c.genus = genus(a, tol);
  c.expected = c.degree + 1 - c.genus;
  c.pass = c.expected == c.rr;
  return c;
}

std::pair<SurfaceAssembly, SplitRecord> split_along(const SurfaceAssembly& a, std::size_t gluing_id) {
  if (gluing_id >= a.gluings.size())
    throw Error(ErrorCode::UnknownGluing, "no gluing " + std::to_string(gluing_id));
  SurfaceAssembly out = a;
  SplitRecord rec{a.gluings[gluing_id], gluing_id};
  out.gluings.erase(out.gluings.begin() + static_cast<std::ptrdiff_t>(gluing_id));
  return {std::move(out), rec};
}

SurfaceAssembly reglue(const SurfaceAssembly& a, const SplitRecord& record) {
  SurfaceAssembly out = a;
  std::size_t pos = std::min(record.position, out.gluings.size());
  out.gluings.insert(out.gluings.begin() + static_cast<std::ptrdiff_t>(pos), record.gluing);
  out.validate();
  return out;
}

SurfaceAssembly refine_annulus(const SurfaceAssembly& a, std::size_t piece, double x, double tol) {
  if (piece >= a.pieces.size() || a.pieces[piece].kind() != PieceKind::Annulus)
    throw Error(ErrorCode::InvalidPiece, "refinement needs an annulus");
  const Piece& src = a.pieces[piece];
  const auto& s = src.profile().samples();
  if (!(x > src.profile().x_min() && x < src.profile().x_max()))
    throw Error(ErrorCode::OutOfDomain, "cut point outside the annulus interior");
  Winding cut(src.profile()(x));
  // Keep the exact lift when the cut hits a sample.
  for (const auto& smp : s)
    if (smp.x == x) cut = smp.u;
  if (on_lattice(cut.exact(), tol))
    throw Error(ErrorCode::LiftOnLattice, "cut fiber is Bohr-Sommerfeld");

  std::vector<ProfileSample> left, right;
  for (const auto& smp : s)
    if (smp.x < x) left.push_back(smp);
  left.push_back({x, cut});
  right.push_back({x, cut});
  for (const auto& smp : s)
    if (smp.x > x) right.push_back(smp);

  SurfaceAssembly out = a;
  out.pieces[piece] = Piece::annulus(HolonomyProfile(std::move(left)));
  std::size_t added = out.pieces.size();
  out.pieces.push_back(Piece::annulus(HolonomyProfile(std::move(right))));
  // Circle 1 of the original now lives on the new right-hand piece.
  for (auto& g : out.gluings) {
    for (BoundaryRef* r : {&g.a, &g.b})
      if (r->piece == piece && r->circle == 1) *r = {added, 1};
  }
  out.gluings.push_back({{piece, 1}, {added, 0}});
  return out;
}

NormalizedPants normalize_pants(const Winding& l1, const Winding& l2, const Winding& l3, double tol) {
  std::array<const Winding*, 3> in{&l1, &l2, &l3};
  for (const Winding* l : in)
    if (on_lattice(l->exact(), tol))
      throw Error(ErrorCode::LiftOnLattice, "pants boundary lift is an integer");
  Rational sum = l1.exact() + l2.exact() + l3.exact();
  if (!on_lattice(sum, tol)) throw Error(ErrorCode::BadSum, "lift sum is not an integer");

  std::array<Winding, 3> canon;
  NormalizedPants out{Piece::pants(l1, l2, l3), {}, 0, 0};
  Rational csum = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    BigInt m = floor(in[i]->exact());
    canon[i] = Winding(Rational(in[i]->exact() - Rational(m)));
    csum += canon[i].exact();
    long long mi = to_int64(m);
    out.offset += mi;
    // One unit annulus per crossed integer, from the canonical lift outward.
    for (long long j = 0; j < std::llabs(mi); ++j) {
      Rational start = mi > 0 ? Rational(canon[i].exact() + j) : Rational(canon[i].exact() - j);
      Rational end = mi > 0 ? Rational(start + 1) : Rational(start - 1);
      out.annuli.push_back(Piece::annulus(
          HolonomyProfile({{0.0, Winding(start)}, {1.0, Winding(end)}})));
    }
  }
  long long k = to_int64(nearest_integer(csum));
  if (k != 1 && k != 2)
    throw Error(ErrorCode::BadSum, "canonical lift sum " + format_rational(csum) + " not in {1, 2}");
  out.canonical = Piece::pants(canon[0], canon[1], canon[2]);
  out.index = (1 - k) + out.offset;
  return out;
}

}  // namespace bsloc
