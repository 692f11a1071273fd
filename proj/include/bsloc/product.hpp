#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsloc/surface.hpp"

namespace bsloc {

enum class FactorKind { Annulus, Disk, Pants, Cylinder, Assembly };

const char* to_string(FactorKind kind);

struct ProductFactor {
  std::string label;
  FactorKind kind = FactorKind::Annulus;
  std::optional<long long> index;
};

struct ProductModel {
  std::vector<ProductFactor> factors;
};

ProductFactor factor_from_piece(const Piece& p, std::string label = {});
ProductFactor factor_from_assembly(const SurfaceAssembly& a, std::string label = {});

/// Product of the factor local indices. Throws UnresolvedFactor when a factor
/// has no index and InvalidPiece for an empty model.
long long product_index(const ProductModel& m);

/// True when a pants factor is present: the value is integer arithmetic only,
/// no boundary condition for the product is constructed.
bool outside_product_scope(const ProductModel& m);

/// Number of Bohr-Sommerfeld circles of a closed annulus-only assembly.
long long bs_fiber_count(const SurfaceAssembly& a, double tol = kLatticeTol);

struct BsFiberCount {
  long long count = 0;       // product of per-factor BS fiber counts
  long long rr_product = 0;  // product of per-factor total_rr
};

/// Throws SingularFiberPresent for disk or pants pieces and CountMismatch when
/// the fiber count disagrees with the product of Riemann-Roch numbers.
BsFiberCount count_bs_fibers(const std::vector<SurfaceAssembly>& factors,
                             double tol = kLatticeTol);

}  // namespace bsloc
