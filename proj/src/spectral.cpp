#include "bsloc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsloc/error.hpp"

namespace bsloc {

double deformation(const SpectralModel& m) {
  return std::visit([](const auto& v) { return v.t; }, m);
}

SpectralModel with_deformation(SpectralModel m, double t) {
  std::visit([t](auto& v) { v.t = t; }, m);
  return m;
}

double BsReference::distance(double x) const {
  if (integer_lattice) return std::abs(x - std::round(x));
  return distance_to_set(set, x);
}

// ---------------------------------------------------------------------------
// Chains

Eigen::MatrixXd Chain::dense() const {
  const std::size_t k = node_count();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(odd_dim()),
                                            static_cast<Eigen::Index>(even_dim()));
  const std::size_t f = first_active(), l = last_active();
  for (std::size_t c = 0; c < cell_count(); ++c) {
    std::size_t i = c, j = (c + 1) % k;
    auto row = static_cast<Eigen::Index>(c);
    if (i >= f && i <= l) m(row, static_cast<Eigen::Index>(i - f)) += lower[c];
    if (j >= f && j <= l) m(row, static_cast<Eigen::Index>(j - f)) += upper[c];
  }
  return m;
}

void Chain::normal_even(std::vector<double>& diag, std::vector<double>& off) const {
  const std::size_t f = first_active(), l = last_active(), cells = cell_count();
  const std::size_t n = even_dim();
  diag.assign(n, 0.0);
  off.assign(n > 0 ? n - 1 : 0, 0.0);
  for (std::size_t i = f; i <= l; ++i) {
    double d = 0.0;
    if (i >= 1) d += upper[i - 1] * upper[i - 1];
    if (i < cells) d += lower[i] * lower[i];
    diag[i - f] = d;
    if (i < l) off[i - f] = lower[i] * upper[i];
  }
}

void Chain::normal_odd(std::vector<double>& diag, std::vector<double>& off) const {
  const std::size_t f = first_active(), l = last_active(), cells = cell_count();
  diag.assign(cells, 0.0);
  off.assign(cells > 0 ? cells - 1 : 0, 0.0);
  auto active = [f, l](std::size_t i) { return i >= f && i <= l; };
  for (std::size_t c = 0; c < cells; ++c) {
    double d = 0.0;
    if (active(c)) d += lower[c] * lower[c];
    if (active(c + 1)) d += upper[c] * upper[c];
    diag[c] = d;
    if (c + 1 < cells && active(c + 1)) off[c] = upper[c] * lower[c + 1];
  }
}

std::size_t DiscretizedOperator::even_dim() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.even_dim();
  return n;
}

std::size_t DiscretizedOperator::odd_dim() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.odd_dim();
  return n;
}

Eigen::SparseMatrix<double> DiscretizedOperator::even_block() const {
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::Index row0 = 0, col0 = 0;
  for (const auto& b : blocks) {
    const std::size_t k = b.node_count(), f = b.first_active(), l = b.last_active();
    for (std::size_t c = 0; c < b.cell_count(); ++c) {
      std::size_t i = c, j = (c + 1) % k;
      auto row = row0 + static_cast<Eigen::Index>(c);
      if (i >= f && i <= l) trip.emplace_back(row, col0 + static_cast<Eigen::Index>(i - f), b.lower[c]);
      if (j >= f && j <= l) trip.emplace_back(row, col0 + static_cast<Eigen::Index>(j - f), b.upper[c]);
    }
    row0 += static_cast<Eigen::Index>(b.odd_dim());
    col0 += static_cast<Eigen::Index>(b.even_dim());
  }
  Eigen::SparseMatrix<double> m(row0, col0);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

// ---------------------------------------------------------------------------
// Assembly

namespace {

void check_grid(int n_x) {
  if (n_x < 16) throw Error(ErrorCode::GridTooCoarse, "grid needs at least 16 points, got " + std::to_string(n_x));
}

/// Stability of the kernel-carrying modes: h (1+t) max|n - rho| <= 1.
void check_stability(double h, double t, double rho_min, double rho_max) {
  double worst = 0.0;
  for (double n = std::floor(rho_min); n <= std::ceil(rho_max); n += 1.0)
    worst = std::max({worst, std::abs(n - rho_min), std::abs(n - rho_max)});
  double bound = h * (1.0 + t) * worst;
  if (bound > 1.0)
    throw Error(ErrorCode::GridTooCoarse, "h (1+t) max|n - rho| = " + std::to_string(bound) + " > 1");
}

void check_mode_window(int n_max, double rho_min, double rho_max) {
  if (static_cast<double>(n_max) < rho_max + 3.0 || -static_cast<double>(n_max) > rho_min - 3.0)
    throw Error(ErrorCode::BadModeWindow, "mode cutoff " + std::to_string(n_max) +
                                              " must stay 3 windings outside the lift range");
}

/// Cell coefficients of the box scheme.
void push_cell(Chain& c, double h, double v_mid) {
  c.lower.push_back(-1.0 / h + 0.5 * v_mid);
  c.upper.push_back(1.0 / h + 0.5 * v_mid);
}

/// Remove an end node when the end solution of P a = 0 would grow toward that
/// end, i.e. when it is not the decaying continuation of an L^2 section.
void set_end_conditions(Chain& c, double v_left, double v_right) {
  if (v_left == 0.0 || v_right == 0.0)
    throw Error(ErrorCode::EndpointOnLattice, "chain end lies on a Bohr-Sommerfeld fiber");
  c.fix_left = v_left > 0.0;
  c.fix_right = v_right < 0.0;
}

}  // namespace

DiscretizedOperator assemble(const TorusModel& m, const GridSpec& grid) {
  if (m.N < 1) throw Error(ErrorCode::InputError, "torus period N must be positive");
  if (m.t < 0.0) throw Error(ErrorCode::InputError, "deformation parameter must be >= 0");
  const int n_x = grid.n_x > 0 ? grid.n_x : 64 * m.N;
  check_grid(n_x);
  const int n_max = grid.n_max < 0 ? m.N + 8 : grid.n_max;
  check_mode_window(n_max, 0.0, static_cast<double>(m.N));
  const double h = static_cast<double>(m.N) / n_x;
  check_stability(h, m.t, 0.0, static_cast<double>(m.N));
  const double s = 1.0 + m.t;

  DiscretizedOperator op;
  op.t = m.t;
  op.h = h;
  op.bs.integer_lattice = true;
  // Orbit n0: modes n = n0 + kN, ordered by decreasing n. Mode n at x sits at
  // chain coordinate y = x + (n0 - n), where the potential is (1+t)(y - n0).
  for (int n0 = 0; n0 < m.N; ++n0) {
    Chain c;
    c.label = n0;
    int top = n0;
    while (top + m.N <= n_max) top += m.N;
    std::vector<double> ys;
    for (int n = top; n >= -n_max; n -= m.N) {
      for (int j = 0; j < n_x; ++j) {
        double x = j * h;
        c.x.push_back(x);
        c.mode.push_back(n);
        ys.push_back(x + static_cast<double>(n0 - n));
      }
    }
    for (std::size_t i = 0; i + 1 < ys.size(); ++i)
      push_cell(c, h, s * (0.5 * (ys[i] + ys[i + 1]) - n0));
    set_end_conditions(c, s * (ys.front() - n0), s * (ys.back() - n0));
    op.blocks.push_back(std::move(c));
  }
  return op;
}

DiscretizedOperator assemble(const FlatTorusModel& m, const GridSpec& grid) {
  if (!(m.length > 0.0)) throw Error(ErrorCode::InputError, "flat torus length must be positive");
  if (m.t < 0.0) throw Error(ErrorCode::InputError, "deformation parameter must be >= 0");
  const int n_x = grid.n_x > 0 ? grid.n_x : 64;
  check_grid(n_x);
  const int n_max = grid.n_max < 0 ? static_cast<int>(std::ceil(std::abs(m.u))) + 3 : grid.n_max;
  check_mode_window(n_max, m.u, m.u);
  const double h = m.length / n_x;
  check_stability(h, m.t, m.u, m.u);

  DiscretizedOperator op;
  op.t = m.t;
  op.h = h;
  Winding u(m.u);
  if (on_lattice(u.exact(), kLatticeTol)) op.bs.set.push_back({0.0, m.length});
  for (int n = -n_max; n <= n_max; ++n) {
    Chain c;
    c.label = n;
    c.ring = true;
    for (int j = 0; j < n_x; ++j) {
      c.x.push_back(j * h);
      c.mode.push_back(n);
      push_cell(c, h, (1.0 + m.t) * (m.u - n));
    }
    op.blocks.push_back(std::move(c));
  }
  return op;
}

double minimum_padding(const CylinderModel& m, double tol) {
  m.validate(tol);
  double d = std::min(lattice_distance(m.profile.u_in().exact()),
                      lattice_distance(m.profile.u_out().exact()));
  return 4.0 / ((1.0 + m.t) * d);
}

int suggested_cells(const CylinderModel& m, double padding) {
  const double lo = m.profile.u_min(), hi = m.profile.u_max();
  const double dev = std::max(std::ceil(hi) - lo, hi - std::floor(lo));
  const double len = m.profile.x_max() - m.profile.x_min() + 2.0 * padding;
  return std::max(64, static_cast<int>(std::ceil(len * (1.0 + m.t) * dev / 0.5)));
}

DiscretizedOperator assemble(const CylinderModel& m, const GridSpec& grid) {
  m.validate();
  const double pad_min = minimum_padding(m);
  double pad = grid.padding < 0.0 ? pad_min : grid.padding;
  if (pad < pad_min * (1.0 - 1e-12))
    throw Error(ErrorCode::BadMargin, "padding " + std::to_string(pad) + " below the decay length bound " +
                                          std::to_string(pad_min));
  const int n_x = grid.n_x > 0 ? grid.n_x : suggested_cells(m, pad);
  check_grid(n_x);
  const HolonomyProfile& rho = m.profile;
  const double lo = rho.u_min(), hi = rho.u_max();
  const int n_max = grid.n_max < 0
                        ? static_cast<int>(std::ceil(std::max(std::abs(lo), std::abs(hi)))) + 3
                        : grid.n_max;
  check_mode_window(n_max, lo, hi);
  const double a = rho.x_min() - pad, b = rho.x_max() + pad;
  const double h = (b - a) / n_x;
  check_stability(h, m.t, lo, hi);
  const double s = 1.0 + m.t;

  std::vector<double> xs(static_cast<std::size_t>(n_x) + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = a + static_cast<double>(i) * h;
  std::vector<double> rho_mid(static_cast<std::size_t>(n_x));
  for (std::size_t i = 0; i < rho_mid.size(); ++i) rho_mid[i] = rho(0.5 * (xs[i] + xs[i + 1]));

  DiscretizedOperator op;
  op.t = m.t;
  op.h = h;
  op.bs.set = rho.bs_set();
  const double rho_in = rho.u_in().value(), rho_out = rho.u_out().value();
  for (int n = -n_max; n <= n_max; ++n) {
    Chain c;
    c.label = n;
    c.x = xs;
    c.mode.assign(xs.size(), n);
    for (double r : rho_mid) push_cell(c, h, s * (r - n));
    set_end_conditions(c, s * (rho_in - n), s * (rho_out - n));
    op.blocks.push_back(std::move(c));
  }
  return op;
}

DiscretizedOperator assemble(const SpectralModel& m, const GridSpec& grid) {
  return std::visit([&grid](const auto& v) { return assemble(v, grid); }, m);
}

// ---------------------------------------------------------------------------
// Operator application

namespace {

struct Offsets {
  std::vector<std::size_t> row, col;
};

Offsets offsets(const DiscretizedOperator& op) {
  Offsets o;
  std::size_t r = 0, c = 0;
  for (const auto& b : op.blocks) {
    o.row.push_back(r);
    o.col.push_back(c);
    r += b.odd_dim();
    c += b.even_dim();
  }
  return o;
}

inline double even_row(const Chain& b, std::size_t c, const double* in) {
  const std::size_t k = b.node_count(), f = b.first_active(), l = b.last_active();
  std::size_t i = c, j = (c + 1) % k;
  double acc = 0.0;
  if (i >= f && i <= l) acc += b.lower[c] * in[i - f];
  if (j >= f && j <= l) acc += b.upper[c] * in[j - f];
  return acc;
}

inline double adjoint_row(const Chain& b, std::size_t i, const double* in) {
  const std::size_t k = b.node_count(), cells = b.cell_count();
  double acc = 0.0;
  if (i < cells) acc += b.lower[i] * in[i];  // cell i starts at node i
  std::size_t prev = i == 0 ? (b.ring ? k - 1 : cells) : i - 1;
  if (prev < cells) acc += b.upper[prev] * in[prev];
  return acc;
}

}  // namespace

void apply_even_serial(const DiscretizedOperator& op, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  Offsets o = offsets(op);
  out.setZero(static_cast<Eigen::Index>(op.odd_dim()));
  for (std::size_t bi = 0; bi < op.blocks.size(); ++bi) {
    const Chain& b = op.blocks[bi];
    for (std::size_t c = 0; c < b.cell_count(); ++c)
      out[static_cast<Eigen::Index>(o.row[bi] + c)] = even_row(b, c, in.data() + o.col[bi]);
  }
}

void apply_even(const DiscretizedOperator& op, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  Offsets o = offsets(op);
  out.setZero(static_cast<Eigen::Index>(op.odd_dim()));
  for (std::size_t bi = 0; bi < op.blocks.size(); ++bi) {
    const Chain& b = op.blocks[bi];
    const double* src = in.data() + o.col[bi];
    double* dst = out.data() + o.row[bi];
    const long cells = static_cast<long>(b.cell_count());
#pragma omp parallel for schedule(static)
    for (long c = 0; c < cells; ++c) dst[c] = even_row(b, static_cast<std::size_t>(c), src);
  }
}

void apply_adjoint_serial(const DiscretizedOperator& op, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  Offsets o = offsets(op);
  out.setZero(static_cast<Eigen::Index>(op.even_dim()));
  for (std::size_t bi = 0; bi < op.blocks.size(); ++bi) {
    const Chain& b = op.blocks[bi];
    const std::size_t f = b.first_active();
    for (std::size_t r = 0; r < b.even_dim(); ++r)
      out[static_cast<Eigen::Index>(o.col[bi] + r)] = adjoint_row(b, r + f, in.data() + o.row[bi]);
  }
}

void apply_adjoint(const DiscretizedOperator& op, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
  Offsets o = offsets(op);
  out.setZero(static_cast<Eigen::Index>(op.even_dim()));
  for (std::size_t bi = 0; bi < op.blocks.size(); ++bi) {
    const Chain& b = op.blocks[bi];
    const std::size_t f = b.first_active();
    const double* src = in.data() + o.row[bi];
    double* dst = out.data() + o.col[bi];
    const long n = static_cast<long>(b.even_dim());
#pragma omp parallel for schedule(static)
    for (long r = 0; r < n; ++r) dst[r] = adjoint_row(b, static_cast<std::size_t>(r) + f, src);
  }
}

}  // namespace bsloc
