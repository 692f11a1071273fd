#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "bsloc/holonomy_profile.hpp"
#include "bsloc/modes.hpp"

namespace bsloc {

/// Quotient torus R^2 / (N Z + 2 pi Z) with connection d - i x dy. Sections obey
/// f(x + N, y) = exp(i N y) f(x, y); the fiberwise winding is rho(x) = x.
struct TorusModel {
  int N = 1;
  double t = 0.0;
};

/// Untwisted torus of circumference `length` with constant winding u.
struct FlatTorusModel {
  double u = 0.5;
  double length = 1.0;
  double t = 0.0;
};

using SpectralModel = std::variant<TorusModel, FlatTorusModel, CylinderModel>;

double deformation(const SpectralModel& m);
SpectralModel with_deformation(SpectralModel m, double t);

struct GridSpec {
  int n_x = 0;            // cells along x; 0 picks 64 N (torus), 64 (flat) or suggested_cells
  int n_max = -1;         // fiber mode cutoff |n| <= n_max; -1 picks a default
  double padding = -1.0;  // cylinder only; -1 uses the minimum decay padding
};

/// One Fourier-mode chain (a full orbit of modes under the seam shift for the
/// torus). Nodes carry the even component, cells between consecutive nodes
/// carry the odd component. The even-to-odd block on a cell is the box scheme
///   (a_{i+1} - a_i)/h + V_mid (a_i + a_{i+1})/2
/// with lower = -1/h + V/2 on node i and upper = 1/h + V/2 on node i+1.
struct Chain {
  std::vector<double> x;       // base coordinate of each node
  std::vector<int> mode;       // fiber mode of each node
  std::vector<double> lower;   // per cell
  std::vector<double> upper;   // per cell
  bool ring = false;           // last cell joins the last node back to node 0
  bool fix_left = false;       // end node removed (decaying-data end condition)
  bool fix_right = false;
  int label = 0;               // mode (cylinder, flat torus) or orbit residue (torus)

  std::size_t node_count() const { return x.size(); }
  std::size_t cell_count() const { return lower.size(); }
  std::size_t first_active() const { return fix_left ? 1 : 0; }
  std::size_t last_active() const { return fix_right ? x.size() - 2 : x.size() - 1; }
  std::size_t even_dim() const { return last_active() + 1 - first_active(); }
  std::size_t odd_dim() const { return cell_count(); }

  /// Even-to-odd block as a dense matrix (rows = cells, cols = active nodes).
  Eigen::MatrixXd dense() const;
  /// Tridiagonal normal operators P^T P (even) and P P^T (odd); open chains only.
  void normal_even(std::vector<double>& diag, std::vector<double>& off) const;
  void normal_odd(std::vector<double>& diag, std::vector<double>& off) const;
};

/// How the Bohr-Sommerfeld set is described for localization diagnostics.
struct BsReference {
  bool integer_lattice = false;    // torus: {x in Z}
  std::vector<BsInterval> set;     // cylinder: crossings of the profile
  double distance(double x) const;
  bool empty() const { return !integer_lattice && set.empty(); }
};

struct DiscretizedOperator {
  std::vector<Chain> blocks;
  double t = 0.0;
  double h = 0.0;
  BsReference bs;

  std::size_t even_dim() const;
  std::size_t odd_dim() const;
  /// Global even-to-odd block, block-diagonal over chains.
  Eigen::SparseMatrix<double> even_block() const;
};

DiscretizedOperator assemble(const TorusModel& m, const GridSpec& grid);
DiscretizedOperator assemble(const FlatTorusModel& m, const GridSpec& grid);
DiscretizedOperator assemble(const CylinderModel& m, const GridSpec& grid);
DiscretizedOperator assemble(const SpectralModel& m, const GridSpec& grid);

/// Cylinder padding that keeps every end decay length inside the domain.
double minimum_padding(const CylinderModel& m, double tol = kLatticeTol);

/// Cell count that keeps h (1+t) max|n - rho| <= 1/2 on the padded domain.
int suggested_cells(const CylinderModel& m, double padding);

// Data-parallel operator application; the serial versions are the reference.
void apply_even_serial(const DiscretizedOperator& op, const Eigen::VectorXd& in, Eigen::VectorXd& out);
void apply_even(const DiscretizedOperator& op, const Eigen::VectorXd& in, Eigen::VectorXd& out);
void apply_adjoint_serial(const DiscretizedOperator& op, const Eigen::VectorXd& in, Eigen::VectorXd& out);
void apply_adjoint(const DiscretizedOperator& op, const Eigen::VectorXd& in, Eigen::VectorXd& out);

enum class Backend {
  Dense,   // Eigen dense eigensolver on the normal operators (reference)
  Lapack,  // LAPACK dstevr on the tridiagonal normal operators
  Auto,    // Lapack for open chains, Dense for rings
};

/// Smallest singular values of one block with their singular vectors.
struct BlockSpectrum {
  std::vector<double> even_sv;  // ascending, from P^T P
  std::vector<double> odd_sv;   // ascending, from P P^T
  Eigen::MatrixXd even_vectors; // columns match even_sv (active-node basis)
  Eigen::MatrixXd odd_vectors;  // columns match odd_sv (cell basis)
};

struct Spectrum {
  std::vector<BlockSpectrum> blocks;
};

BlockSpectrum solve_block(const Chain& chain, std::size_t k, Backend backend = Backend::Auto);
Spectrum solve_spectrum_serial(const DiscretizedOperator& op, std::size_t k,
                               Backend backend = Backend::Auto);
Spectrum solve_spectrum(const DiscretizedOperator& op, std::size_t k,
                        Backend backend = Backend::Auto);

inline constexpr std::size_t kReportedSingularValues = 20;
inline constexpr double kDefaultDelta = 0.3;
inline constexpr double kResolutionRatio = 10.0;

struct SpectralRow {
  double t = 0.0;
  std::vector<double> sv_even;  // globally smallest, ascending
  std::vector<double> sv_odd;
  long long kernel_even = 0;
  long long kernel_odd = 0;
  long long index = 0;
  double tau = 0.0;
  double gap = 0.0;
  bool resolved = false;
  std::optional<double> localization_fraction;  // minimum over near-kernel vectors
};

/// tau = (21st smallest even singular value) / 100.
double relative_threshold(const Spectrum& s);

/// tau <= 0 selects the relative threshold.
SpectralRow analyze(const DiscretizedOperator& op, const Spectrum& s, double tau,
                    double delta = kDefaultDelta);

struct IndexResult {
  long long index = 0;
  SpectralRow row;
};

/// Index by kernel counting. tau <= 0 selects the relative threshold.
/// Throws Unresolved when gap / tau < 10.
IndexResult compute_index(const DiscretizedOperator& op, double tau = -1.0,
                          double delta = kDefaultDelta);

struct Localization {
  std::size_t id = 0;
  bool even = true;
  int block = 0;
  double fraction = 0.0;
};

/// Fraction of squared norm within delta of the BS set, per near-kernel vector.
/// Throws EmptyKernel when no vector lies below tau or the BS set is empty.
std::vector<Localization> localization_profile(const DiscretizedOperator& op, const Spectrum& s,
                                               double tau, double delta = kDefaultDelta);

struct SweepReport {
  std::vector<SpectralRow> rows;
  bool acyclic = false;           // model has no Bohr-Sommerfeld fiber
  bool index_stable = true;
  std::optional<long long> index; // common index of resolved rows
  std::optional<double> t_star;   // first resolved t
  bool vanishing_ok = true;       // acyclic: kernel 0 past t*, gap non-decreasing (5%)
  bool ok() const { return index_stable && vanishing_ok && t_star.has_value(); }
};

/// Rows for increasing t on a fixed geometry (cylinder padding taken at the
/// smallest t). Rows are computed in parallel over t.
SweepReport sweep(const SpectralModel& m, const std::vector<double>& t_list, const GridSpec& grid,
                  double delta = kDefaultDelta);

}  // namespace bsloc
