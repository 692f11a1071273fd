#include "bsloc/product.hpp"

#include "bsloc/error.hpp"

namespace bsloc {

const char* to_string(FactorKind kind) {
  switch (kind) {
    case FactorKind::Annulus: return "annulus";
    case FactorKind::Disk: return "disk";
    case FactorKind::Pants: return "pants";
    case FactorKind::Cylinder: return "cylinder";
    case FactorKind::Assembly: return "assembly";
  }
  return "?";
}

ProductFactor factor_from_piece(const Piece& p, std::string label) {
  ProductFactor f;
  f.label = std::move(label);
  switch (p.kind()) {
    case PieceKind::Annulus: f.kind = FactorKind::Annulus; break;
    case PieceKind::Disk: f.kind = FactorKind::Disk; break;
    case PieceKind::Pants: f.kind = FactorKind::Pants; break;
  }
  f.index = local_index(p);
  return f;
}

ProductFactor factor_from_assembly(const SurfaceAssembly& a, std::string label) {
  a.validate();
  if (a.pieces.size() == 1 && a.gluings.empty()) return factor_from_piece(a.pieces[0], std::move(label));
  ProductFactor f;
  f.label = std::move(label);
  f.kind = FactorKind::Assembly;
  f.index = sum_local_indices(a);
  return f;
}

long long product_index(const ProductModel& m) {
  if (m.factors.empty()) throw Error(ErrorCode::InvalidPiece, "product needs at least one factor");
  long long k = 1;
  for (const auto& f : m.factors) {
    if (!f.index) throw Error(ErrorCode::UnresolvedFactor, "factor '" + f.label + "' has no resolved index");
    k *= *f.index;
  }
  return k;
}

bool outside_product_scope(const ProductModel& m) {
  for (const auto& f : m.factors)
    if (f.kind == FactorKind::Pants) return true;
  return false;
}

long long bs_fiber_count(const SurfaceAssembly& a, double tol) {
  long long count = 0;
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    const Piece& p = a.pieces[i];
    if (p.kind() != PieceKind::Annulus)
      throw Error(ErrorCode::SingularFiberPresent,
                  std::string("piece ") + std::to_string(i) + " is a " + to_string(p.kind()));
    for (const auto& iv : p.profile().bs_set()) {
      if (iv.hi > iv.lo)
        throw Error(ErrorCode::InvalidPiece, "piece " + std::to_string(i) +
                                                 " has a band of Bohr-Sommerfeld fibers on [" +
                                                 format_double(iv.lo) + ", " + format_double(iv.hi) + "]");
      ++count;
    }
  }
  (void)tol;
  return count;
}

BsFiberCount count_bs_fibers(const std::vector<SurfaceAssembly>& factors, double tol) {
  if (factors.empty()) throw Error(ErrorCode::InvalidPiece, "product needs at least one factor");
  BsFiberCount r{1, 1};
  for (const auto& a : factors) {
    for (std::size_t i = 0; i < a.pieces.size(); ++i)
      if (a.pieces[i].kind() != PieceKind::Annulus)
        throw Error(ErrorCode::SingularFiberPresent,
                    std::string("piece ") + std::to_string(i) + " is a " + to_string(a.pieces[i].kind()));
    r.rr_product *= total_rr(a, tol);
    r.count *= bs_fiber_count(a, tol);
  }
  if (r.count != r.rr_product)
    throw Error(ErrorCode::CountMismatch, "Bohr-Sommerfeld fiber count " + std::to_string(r.count) +
                                              " differs from the Riemann-Roch product " +
                                              std::to_string(r.rr_product));
  return r;
}

}  // namespace bsloc
