#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "bsloc/error.hpp"
#include "bsloc/spectral.hpp"

namespace bsloc {

namespace {

/// Smallest `k` eigenpairs of a symmetric tridiagonal matrix (MRRR).
void tridiagonal_smallest(std::vector<double> diag, std::vector<double> off, std::size_t k,
                          std::vector<double>& values, Eigen::MatrixXd& vectors) {
  const lapack_int n = static_cast<lapack_int>(diag.size());
  values.clear();
  if (n == 0 || k == 0) {
    vectors.resize(n, 0);
    return;
  }
  const lapack_int want = std::min<lapack_int>(static_cast<lapack_int>(k), n);
  off.resize(static_cast<std::size_t>(n), 0.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  vectors.resize(n, want);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(want));
  lapack_int found = 0;
  lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1,
                                   want, 0.0, &found, w.data(), vectors.data(), n, isuppz.data());
  if (info != 0) throw std::runtime_error("dstevr failed with info " + std::to_string(info));
  values.assign(w.begin(), w.begin() + found);
  vectors.conservativeResize(n, found);
}

void dense_smallest(const Eigen::MatrixXd& normal, std::size_t k, std::vector<double>& values,
                    Eigen::MatrixXd& vectors) {
  const Eigen::Index n = normal.rows();
  values.clear();
  if (n == 0) {
    vectors.resize(0, 0);
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normal);
  const Eigen::Index want = std::min<Eigen::Index>(static_cast<Eigen::Index>(k), n);
  for (Eigen::Index i = 0; i < want; ++i) values.push_back(es.eigenvalues()[i]);
  vectors = es.eigenvectors().leftCols(want);
}

std::vector<double> to_singular(const std::vector<double>& eig) {
  std::vector<double> sv(eig.size());
  for (std::size_t i = 0; i < eig.size(); ++i) sv[i] = std::sqrt(std::max(eig[i], 0.0));
  return sv;
}

}  // namespace

BlockSpectrum solve_block(const Chain& chain, std::size_t k, Backend backend) {
  if (backend == Backend::Auto) backend = chain.ring ? Backend::Dense : Backend::Lapack;
  if (backend == Backend::Lapack && chain.ring)
    throw std::invalid_argument("LAPACK backend needs an open chain");
  BlockSpectrum out;
  std::vector<double> eig;
  if (backend == Backend::Dense) {
    Eigen::MatrixXd p = chain.dense();
    dense_smallest(p.transpose() * p, k, eig, out.even_vectors);
    out.even_sv = to_singular(eig);
    dense_smallest(p * p.transpose(), k, eig, out.odd_vectors);
    out.odd_sv = to_singular(eig);
  } else {
    std::vector<double> d, e;
    chain.normal_even(d, e);
    tridiagonal_smallest(d, e, k, eig, out.even_vectors);
    out.even_sv = to_singular(eig);
    chain.normal_odd(d, e);
    tridiagonal_smallest(d, e, k, eig, out.odd_vectors);
    out.odd_sv = to_singular(eig);
  }
  return out;
}

Spectrum solve_spectrum_serial(const DiscretizedOperator& op, std::size_t k, Backend backend) {
  Spectrum s;
  s.blocks.reserve(op.blocks.size());
  for (const auto& b : op.blocks) s.blocks.push_back(solve_block(b, k, backend));
  return s;
}

Spectrum solve_spectrum(const DiscretizedOperator& op, std::size_t k, Backend backend) {
  Spectrum s;
  s.blocks.resize(op.blocks.size());
  const long nb = static_cast<long>(op.blocks.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < nb; ++i) {
    try {
      s.blocks[static_cast<std::size_t>(i)] = solve_block(op.blocks[static_cast<std::size_t>(i)], k, backend);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return s;
}

namespace {

std::vector<double> merged(const Spectrum& s, bool even) {
  std::vector<double> all;
  for (const auto& b : s.blocks) {
    const auto& v = even ? b.even_sv : b.odd_sv;
    all.insert(all.end(), v.begin(), v.end());
  }
  std::sort(all.begin(), all.end());
  return all;
}

double cell_position(const Chain& b, std::size_t c) {
  double h = 2.0 / (b.upper[c] - b.lower[c]);
  return b.x[c] + 0.5 * h;
}

}  // namespace

double relative_threshold(const Spectrum& s) {
  std::vector<double> sv = merged(s, true);
  if (sv.empty()) return 0.0;
  double ref = sv[std::min<std::size_t>(kReportedSingularValues, sv.size() - 1)];
  if (ref <= 0.0) ref = sv.back();
  return ref / 100.0;
}

std::vector<Localization> localization_profile(const DiscretizedOperator& op, const Spectrum& s,
                                               double tau, double delta) {
  if (op.bs.empty()) throw Error(ErrorCode::EmptyKernel, "model has no Bohr-Sommerfeld fiber");
  std::vector<Localization> out;
  for (std::size_t bi = 0; bi < op.blocks.size(); ++bi) {
    const Chain& b = op.blocks[bi];
    const BlockSpectrum& bs = s.blocks[bi];
    for (std::size_t v = 0; v < bs.even_sv.size() && bs.even_sv[v] < tau; ++v) {
      double near = 0.0, total = 0.0;
      for (std::size_t r = 0; r < b.even_dim(); ++r) {
        double a = bs.even_vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(v));
        total += a * a;
        if (op.bs.distance(b.x[r + b.first_active()]) < delta) near += a * a;
      }
      out.push_back({out.size(), true, static_cast<int>(bi), near / total});
    }
    for (std::size_t v = 0; v < bs.odd_sv.size() && bs.odd_sv[v] < tau; ++v) {
      double near = 0.0, total = 0.0;
      for (std::size_t c = 0; c < b.odd_dim(); ++c) {
        double a = bs.odd_vectors(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(v));
        total += a * a;
        if (op.bs.distance(cell_position(b, c)) < delta) near += a * a;
      }
      out.push_back({out.size(), false, static_cast<int>(bi), near / total});
    }
  }
  if (out.empty()) throw Error(ErrorCode::EmptyKernel, "no singular value below tau");
  return out;
}

SpectralRow analyze(const DiscretizedOperator& op, const Spectrum& s, double tau, double delta) {
  if (tau <= 0.0) tau = relative_threshold(s);
  SpectralRow row;
  row.t = op.t;
  row.tau = tau;
  std::vector<double> even = merged(s, true), odd = merged(s, false);
  row.sv_even.assign(even.begin(), even.begin() + static_cast<long>(std::min(even.size(), kReportedSingularValues)));
  row.sv_odd.assign(odd.begin(), odd.begin() + static_cast<long>(std::min(odd.size(), kReportedSingularValues)));
  row.kernel_even = std::count_if(even.begin(), even.end(), [tau](double v) { return v < tau; });
  row.kernel_odd = std::count_if(odd.begin(), odd.end(), [tau](double v) { return v < tau; });
  row.index = row.kernel_even - row.kernel_odd;
  row.gap = std::numeric_limits<double>::infinity();
  for (const auto* list : {&even, &odd})
    for (double v : *list)
      if (v >= tau) {
        row.gap = std::min(row.gap, v);
        break;
      }
  row.resolved = tau > 0.0 && row.gap >= kResolutionRatio * tau;
  if (row.kernel_even + row.kernel_odd > 0 && !op.bs.empty()) {
    double worst = 1.0;
    for (const auto& l : localization_profile(op, s, tau, delta)) worst = std::min(worst, l.fraction);
    row.localization_fraction = worst;
  }
  return row;
}

IndexResult compute_index(const DiscretizedOperator& op, double tau, double delta) {
  Spectrum s = solve_spectrum(op, kReportedSingularValues + 1);
  IndexResult r;
  r.row = analyze(op, s, tau, delta);
  if (!r.row.resolved)
    throw Error(ErrorCode::Unresolved, "gap " + std::to_string(r.row.gap) + " < 10 tau (tau = " +
                                           std::to_string(r.row.tau) + "); increase t or refine the grid");
  r.index = r.row.index;
  return r;
}

namespace {

bool model_is_acyclic(const SpectralModel& m) {
  if (std::holds_alternative<TorusModel>(m)) return false;
  if (const auto* f = std::get_if<FlatTorusModel>(&m)) return !on_lattice(Winding(f->u).exact(), kLatticeTol);
  return std::get<CylinderModel>(m).profile.bs_set().empty();
}

}  // namespace

SweepReport sweep(const SpectralModel& m, const std::vector<double>& t_list, const GridSpec& grid,
                  double delta) {
  if (t_list.size() < 3) throw Error(ErrorCode::InputError, "a sweep needs at least 3 t values");
  for (std::size_t i = 1; i < t_list.size(); ++i)
    if (!(t_list[i] > t_list[i - 1])) throw Error(ErrorCode::InputError, "t values must increase");

  GridSpec g = grid;
  if (const auto* cyl = std::get_if<CylinderModel>(&m); cyl && g.padding < 0.0) {
    CylinderModel first = *cyl;
    first.t = t_list.front();
    g.padding = minimum_padding(first);
  }
  if (const auto* cyl = std::get_if<CylinderModel>(&m); cyl && g.n_x <= 0) {
    CylinderModel last = *cyl;
    last.t = t_list.back();
    g.n_x = suggested_cells(last, g.padding);
  }

  SweepReport rep;
  rep.acyclic = model_is_acyclic(m);
  rep.rows.resize(t_list.size());
  std::exception_ptr failure;
  const long nt = static_cast<long>(t_list.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < nt; ++i) {
    try {
      auto op = assemble(with_deformation(m, t_list[static_cast<std::size_t>(i)]), g);
      Spectrum s = solve_spectrum_serial(op, kReportedSingularValues + 1);
      rep.rows[static_cast<std::size_t>(i)] = analyze(op, s, relative_threshold(s), delta);
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const SpectralRow* prev = nullptr;
  for (const auto& row : rep.rows) {
    if (!row.resolved) continue;
    if (!rep.t_star) rep.t_star = row.t;
    if (!rep.index) rep.index = row.index;
    if (*rep.index != row.index) rep.index_stable = false;
    if (rep.acyclic) {
      if (row.kernel_even + row.kernel_odd != 0) rep.vanishing_ok = false;
      if (prev && row.gap < 0.95 * prev->gap) rep.vanishing_ok = false;
    }
    prev = &row;
  }
  return rep;
}

}  // namespace bsloc
