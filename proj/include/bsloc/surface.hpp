#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bsloc/holonomy_profile.hpp"
#include "bsloc/winding.hpp"

namespace bsloc {

enum class PieceKind { Annulus, Disk, Pants };

const char* to_string(PieceKind kind);

/// A decorated surface piece. Boundary lifts are boundary-oriented (Stokes
/// convention): an annulus over [a, b] has circle 0 at x = a with lift -u(a)
/// and circle 1 at x = b with lift +u(b); a disk has one circle with lift
/// u(r_max); a pants carries its three lifts directly.
class Piece {
 public:
  static Piece annulus(HolonomyProfile profile, double margin = 0.0);
  static Piece disk(HolonomyProfile profile, double margin = 0.0);
  static Piece pants(Winding l1, Winding l2, Winding l3);

  PieceKind kind() const { return kind_; }
  const HolonomyProfile& profile() const { return *profile_; }
  bool has_profile() const { return profile_.has_value(); }
  double margin() const { return margin_; }
  const std::array<Winding, 3>& lifts() const { return lifts_; }

  int boundary_count() const;
  Winding boundary_lift(int circle) const;
  /// Integral of curvature in winding units.
  Rational curvature() const;
  int euler_characteristic() const;

  /// Throws InvalidPiece when an invariant fails.
  void validate(double tol = kLatticeTol) const;

 private:
  Piece() = default;

  PieceKind kind_ = PieceKind::Annulus;
  std::optional<HolonomyProfile> profile_;
  double margin_ = 0.0;
  std::array<Winding, 3> lifts_{};
};

struct BoundaryRef {
  std::size_t piece = 0;
  int circle = 0;
  bool operator==(const BoundaryRef&) const = default;
};

struct Gluing {
  BoundaryRef a;
  BoundaryRef b;
};

struct SurfaceAssembly {
  std::vector<Piece> pieces;
  std::vector<Gluing> gluings;

  std::size_t circle_count() const;
  bool is_closed() const;
  /// Checks piece invariants, gluing references, single use of every circle and
  /// lift-sum integrality. Throws on the first violation.
  void validate(double tol = kLatticeTol) const;
  /// Connected components as lists of piece indices, in ascending order.
  std::vector<std::vector<std::size_t>> components() const;
};

/// Local Riemann-Roch numbers of the canonical pieces.
struct LocalIndexTable {
  static constexpr int bs_plus = 1;
  static constexpr int bs_minus = -1;
  static constexpr int disk_plus = 1;
  static constexpr int disk_minus = 0;
  static constexpr int pants_small = 0;
  static constexpr int pants_large = -1;
};

long long local_index(const Piece& p, double tol = kLatticeTol);

/// Sum of local indices; no closedness requirement.
long long sum_local_indices(const SurfaceAssembly& a, double tol = kLatticeTol);

long long total_rr(const SurfaceAssembly& a, double tol = kLatticeTol);
Rational degree(const SurfaceAssembly& a, double tol = kLatticeTol);
long long genus(const SurfaceAssembly& a, double tol = kLatticeTol);

struct CrossCheck {
  bool pass = false;
  long long rr = 0;
  long long expected = 0;  // degree + 1 - genus
  long long degree = 0;
  long long genus = 0;
};

CrossCheck rr_cross_check(const SurfaceAssembly& a, double tol = kLatticeTol);

struct SplitRecord {
  Gluing gluing;
  std::size_t position = 0;  // index the gluing occupied
};

std::pair<SurfaceAssembly, SplitRecord> split_along(const SurfaceAssembly& a,
                                                    std::size_t gluing_id);
SurfaceAssembly reglue(const SurfaceAssembly& a, const SplitRecord& record);

/// Cut an annulus at interior x into two annuli glued along the new circle.
/// The lift at the cut must be acyclic.
SurfaceAssembly refine_annulus(const SurfaceAssembly& a, std::size_t piece, double x,
                               double tol = kLatticeTol);

struct NormalizedPants {
  Piece canonical;
  std::vector<Piece> annuli;  // one unit BS annulus per crossed integer
  long long offset = 0;       // sum of floor(l_i)
  long long index = 0;        // (1 - k) + offset
};

/// Reduce arbitrary flat pants lifts to lifts in (0, 1) plus BS annuli.
NormalizedPants normalize_pants(const Winding& l1, const Winding& l2, const Winding& l3,
                                double tol = kLatticeTol);

}  // namespace bsloc
