#include "bsloc/cli.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bsloc/assembly_json.hpp"
#include "bsloc/error.hpp"
#include "bsloc/fuzz.hpp"
#include "bsloc/modes.hpp"
#include "bsloc/product.hpp"
#include "bsloc/spectral.hpp"

namespace bsloc {

namespace {

struct ModelInput {
  SpectralModel model;
  GridSpec grid;
};

double json_number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw Error(ErrorCode::InputError, std::string("\"") + key + "\" must be a number");
  return j[key].get<double>();
}

ModelInput model_from_json(const Json& j, const RunConfig& cfg, double t_default) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorCode::InputError, "model needs a string \"kind\" (torus, cylinder, flat_torus)");
  const std::string kind = j["kind"].get<std::string>();
  const double t = cfg.t ? *cfg.t : json_number(j, "t", t_default);
  ModelInput in;
  in.grid.n_max = cfg.modes >= 0 ? cfg.modes : static_cast<int>(json_number(j, "modes", -1));
  int grid = cfg.grid > 0 ? cfg.grid : static_cast<int>(json_number(j, "grid", 0));
  if (kind == "torus") {
    int n = static_cast<int>(json_number(j, "N", 1));
    if (n < 1) throw Error(ErrorCode::InputError, "torus N must be >= 1");
    in.model = TorusModel{n, t};
    in.grid.n_x = grid > 0 ? grid : 64 * n;
  } else if (kind == "flat_torus") {
    in.model = FlatTorusModel{json_number(j, "u", 0.5), json_number(j, "length", 1.0), t};
    in.grid.n_x = grid > 0 ? grid : 64;
  } else if (kind == "cylinder") {
    CylinderModel m{profile_from_json(j.at("profile")), t};
    in.grid.padding = json_number(j, "padding", -1.0);
    in.model = m;
    in.grid.n_x = grid;
  } else {
    throw Error(ErrorCode::InputError, "unknown model kind '" + kind + "'");
  }
  return in;
}

// Cylinder grids default to the resolved cell count at the largest t, with
// padding taken at the smallest t.
void finish_cylinder_grid(ModelInput& in, double t_min, double t_max) {
  auto* cyl = std::get_if<CylinderModel>(&in.model);
  if (!cyl) return;
  CylinderModel lo = *cyl, hi = *cyl;
  lo.t = t_min;
  hi.t = t_max;
  if (in.grid.padding < 0.0) in.grid.padding = minimum_padding(lo);
  if (in.grid.n_x <= 0) in.grid.n_x = suggested_cells(hi, in.grid.padding);
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

Json num_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void write_file(const RunConfig& cfg, const std::string& name, const std::string& body) {
  if (cfg.out_dir.empty()) return;
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream f(std::filesystem::path(cfg.out_dir) / name, std::ios::binary);
  if (!f) throw Error(ErrorCode::InputError, "cannot write " + cfg.out_dir + "/" + name);
  f << body;
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& stem, const std::string& csv,
          const Json& json) {
  const std::string js = json.dump(2) + "\n";
  write_file(cfg, stem + ".csv", csv);
  write_file(cfg, stem + ".json", js);
  out << (cfg.format == OutputFormat::Json ? js : csv);
}

void require_inputs(const RunConfig& cfg, std::size_t n) {
  if (cfg.inputs.size() < n)
    throw Error(ErrorCode::InputError, cfg.subcommand + " needs " + std::to_string(n) + " input file(s)");
}

bool is_model(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) return false;
  const std::string k = j["kind"].get<std::string>();
  return k == "torus" || k == "cylinder" || k == "flat_torus";
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_inputs(cfg, 1);
  int code = kExitOk;
  std::ostringstream csv;
  csv << "input,kind,status,detail\n";
  Json rep = Json::array();
  for (const auto& path : cfg.inputs) {
    Json j = load_json_file(path);
    std::string kind, status = "ok", detail;
    try {
      if (j.is_object() && j.contains("pieces")) {
        kind = "assembly";
        SurfaceAssembly a = assembly_from_json(j);
        a.validate(cfg.tol);
        detail = std::to_string(a.pieces.size()) + " pieces, " + std::to_string(a.gluings.size()) +
                 " gluings, " + (a.is_closed() ? "closed" : "open");
      } else if (is_model(j)) {
        kind = j["kind"].get<std::string>();
        ModelInput in = model_from_json(j, cfg, 10.0);
        if (auto* c = std::get_if<CylinderModel>(&in.model)) c->validate(cfg.tol);
      } else {
        Piece p = piece_from_json(j);
        kind = to_string(p.kind());
        p.validate(cfg.tol);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InputError) throw;
      status = "invalid";
      detail = e.what();
      code = kExitCheckFailed;
    }
    err << path << ": " << status << (detail.empty() ? "" : " (" + detail + ")") << "\n";
    csv << path << "," << kind << "," << status << ",\"" << detail << "\"\n";
    rep.push_back({{"input", path}, {"kind", kind}, {"status", status}, {"detail", detail}});
  }
  emit(cfg, out, "validate", csv.str(), rep);
  return code;
}

int cmd_rr(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_inputs(cfg, 1);
  SurfaceAssembly a = assembly_from_json(load_json_file(cfg.inputs[0]));
  a.validate(cfg.tol);
  std::ostringstream csv;
  csv << "piece-id,kind,local_index\n";
  Json rep;
  rep["pieces"] = Json::array();
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    long long k = local_index(a.pieces[i], cfg.tol);
    csv << piece_id(i) << "," << to_string(a.pieces[i].kind()) << "," << k << "\n";
    rep["pieces"].push_back({{"id", piece_id(i)}, {"kind", to_string(a.pieces[i].kind())}, {"local_index", k}});
  }
  long long total = sum_local_indices(a, cfg.tol);
  csv << "total,," << total << "\n";
  rep["rr"] = total;
  int code = kExitOk;
  err << "RR=" << total << "\n";
  if (cfg.cross_check) {
    CrossCheck c = rr_cross_check(a, cfg.tol);
    rep["cross_check"] = {{"pass", c.pass}, {"rr", c.rr}, {"degree", c.degree}, {"genus", c.genus},
                          {"expected", c.expected}};
    err << "degree=" << c.degree << " genus=" << c.genus << " degree+1-genus=" << c.expected << " "
        << (c.pass ? "PASS" : "FAIL") << "\n";
    if (!c.pass) {
      err << "diff: RR " << c.rr << " != " << c.expected << "\n";
      code = kExitCheckFailed;
    }
  }
  emit(cfg, out, "rr", csv.str(), rep);
  return code;
}

int cmd_modes(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_inputs(cfg, 1);
  Json j = load_json_file(cfg.inputs[0]);
  CylinderModel m{profile_from_json(j), cfg.t ? *cfg.t : json_number(j.is_object() ? j : Json::object(), "t", 10.0)};
  ModeKernelReport r = count_kernel_modes(m, cfg.tol);
  long long surface = local_index(Piece::annulus(m.profile), cfg.tol);
  std::ostringstream csv;
  csv << "n,component\n";
  for (long long n : r.even_modes) csv << n << ",even\n";
  for (long long n : r.odd_modes) csv << n << ",odd\n";
  csv << "index,," << r.index << "\n";
  Json rep{{"t", m.t},
           {"even_modes", r.even_modes},
           {"odd_modes", r.odd_modes},
           {"index", r.index},
           {"surface_index", surface}};
  err << "index=" << r.index << " surface=" << surface << (r.index == surface ? " agree" : " DISAGREE") << "\n";
  emit(cfg, out, "modes", csv.str(), rep);
  return r.index == surface ? kExitOk : kExitCheckFailed;
}

std::string row_header() {
  std::ostringstream h;
  h << "t";
  for (std::size_t i = 1; i <= kReportedSingularValues; ++i) h << ",sv_" << i << "_even";
  for (std::size_t i = 1; i <= kReportedSingularValues; ++i) h << ",sv_" << i << "_odd";
  h << ",kernel_even,kernel_odd,index,gap,localization_fraction\n";
  return h.str();
}

std::string row_csv(const SpectralRow& r) {
  std::ostringstream s;
  s << num(r.t);
  for (const auto* v : {&r.sv_even, &r.sv_odd})
    for (std::size_t i = 0; i < kReportedSingularValues; ++i) s << "," << (i < v->size() ? num((*v)[i]) : "");
  s << "," << r.kernel_even << "," << r.kernel_odd << "," << r.index << "," << num(r.gap) << ","
    << (r.localization_fraction ? num(*r.localization_fraction) : "") << "\n";
  return s.str();
}

Json row_json(const SpectralRow& r) {
  Json j{{"t", r.t},
         {"kernel_even", r.kernel_even},
         {"kernel_odd", r.kernel_odd},
         {"index", r.index},
         {"tau", r.tau},
         {"gap", num_json(r.gap)},
         {"resolved", r.resolved},
         {"sv_even", r.sv_even},
         {"sv_odd", r.sv_odd}};
  j["localization_fraction"] = r.localization_fraction ? Json(*r.localization_fraction) : Json(nullptr);
  return j;
}

Json grid_json(const GridSpec& g) {
  Json j{{"n_x", g.n_x}, {"n_max", g.n_max}};
  if (g.padding >= 0.0) j["padding"] = g.padding;
  return j;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_inputs(cfg, 1);
  ModelInput in = model_from_json(load_json_file(cfg.inputs[0]), cfg, 10.0);
  const double t = deformation(in.model);
  finish_cylinder_grid(in, t, t);
  DiscretizedOperator op = assemble(in.model, in.grid);
  Spectrum s = solve_spectrum(op, kReportedSingularValues + 1);
  SpectralRow row = analyze(op, s, relative_threshold(s), cfg.delta);
  Json rep{{"model", load_json_file(cfg.inputs[0])}, {"grid", grid_json(in.grid)}, {"row", row_json(row)},
           {"index", row.resolved ? Json(row.index) : Json(nullptr)}, {"resolved", row.resolved}};
  emit(cfg, out, "spectrum", row_header() + row_csv(row), rep);
  if (!row.resolved) {
    err << "Unresolved: gap " << num(row.gap) << " < 10 tau (tau " << num(row.tau)
        << "); increase t or refine the grid\n";
    return kExitUnresolved;
  }
  err << "index=" << row.index << " gap=" << num(row.gap) << " tau=" << num(row.tau) << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_inputs(cfg, 1);
  std::vector<double> ts = cfg.t_list.empty() ? std::vector<double>{1.0, 5.0, 20.0} : cfg.t_list;
  RunConfig c = cfg;
  c.t.reset();
  ModelInput in = model_from_json(load_json_file(cfg.inputs[0]), c, ts.front());
  in.model = with_deformation(in.model, ts.front());
  finish_cylinder_grid(in, ts.front(), ts.back());
  SweepReport rep = sweep(in.model, ts, in.grid, cfg.delta);
  std::string csv = row_header();
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    csv += row_csv(r);
    rows.push_back(row_json(r));
  }
  Json js{{"grid", grid_json(in.grid)},
          {"rows", rows},
          {"acyclic", rep.acyclic},
          {"index_stable", rep.index_stable},
          {"vanishing_ok", rep.vanishing_ok},
          {"index", rep.index ? Json(*rep.index) : Json(nullptr)},
          {"t_star", rep.t_star ? Json(*rep.t_star) : Json(nullptr)}};
  emit(cfg, out, "sweep", csv, js);
  if (!rep.t_star) {
    err << "Unresolved: no t in the sweep reaches gap >= 10 tau\n";
    return kExitUnresolved;
  }
  err << "index=" << *rep.index << " t*=" << num(*rep.t_star) << (rep.index_stable ? "" : " index UNSTABLE")
      << (rep.vanishing_ok ? "" : " vanishing FAILED") << "\n";
  return rep.ok() ? kExitOk : kExitCheckFailed;
}

int cmd_product(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require_inputs(cfg, 1);
  ProductModel pm;
  std::vector<SurfaceAssembly> closed;
  bool all_closed = true;
  for (const auto& path : cfg.inputs) {
    Json j = load_json_file(path);
    std::string label = std::filesystem::path(path).stem().string();
    if (j.is_object() && j.contains("pieces")) {
      SurfaceAssembly a = assembly_from_json(j);
      pm.factors.push_back(factor_from_assembly(a, label));
      if (a.is_closed()) closed.push_back(std::move(a));
      else all_closed = false;
    } else if (is_model(j) && j["kind"] == "cylinder") {
      CylinderModel m{profile_from_json(j.at("profile")), json_number(j, "t", 10.0)};
      pm.factors.push_back({label, FactorKind::Cylinder, count_kernel_modes(m, cfg.tol).index});
      all_closed = false;
    } else {
      Piece p = piece_from_json(j);
      p.validate(cfg.tol);
      pm.factors.push_back(factor_from_piece(p, label));
      all_closed = false;
    }
  }
  long long k = product_index(pm);
  Json rep;
  rep["factors"] = Json::array();
  std::ostringstream csv;
  csv << "factor,kind,index\n";
  for (const auto& f : pm.factors) {
    rep["factors"].push_back({{"label", f.label}, {"kind", to_string(f.kind)}, {"index", *f.index}});
    csv << f.label << "," << to_string(f.kind) << "," << *f.index << "\n";
  }
  csv << "product,," << k << "\n";
  rep["index"] = k;
  rep["outside_scope"] = outside_product_scope(pm);
  int code = kExitOk;
  if (all_closed) {
    try {
      BsFiberCount c = count_bs_fibers(closed, cfg.tol);
      rep["bs_fibers"] = c.count;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::CountMismatch) code = kExitCheckFailed;
      else if (e.code() != ErrorCode::SingularFiberPresent) throw;
      err << e.what() << "\n";
    }
  }
  if (outside_product_scope(pm)) err << "warning: pants factor present, value is arithmetic only\n";
  err << "index=" << k << "\n";
  emit(cfg, out, "product", csv.str(), rep);
  return code;
}

int cmd_fuzz(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  FuzzOptions opt;
  opt.count = cfg.count;
  opt.seed = cfg.seed;
  opt.spectral_samples = cfg.spectral_samples;
  if (opt.count < 0) throw Error(ErrorCode::InputError, "--count must be >= 0");
  FuzzSummary s = run_fuzz(opt);
  std::ostringstream csv;
  csv << "case,seed,pieces,rr,degree,genus,rr_check,annuli,mode_agree,spectral_checked,spectral_agree\n";
  Json cases = Json::array();
  int passed = 0;
  for (std::size_t i = 0; i < s.cases.size(); ++i) {
    const FuzzCase& c = s.cases[i];
    if (c.check.pass) ++passed;
    csv << i << "," << c.seed << "," << c.pieces << "," << c.check.rr << "," << c.check.degree << ","
        << c.check.genus << "," << (c.check.pass ? "pass" : "FAIL") << "," << c.annuli << ","
        << c.annuli_mode_agree << "," << c.spectral_checked << "," << c.spectral_agree << "\n";
    cases.push_back({{"seed", c.seed}, {"pieces", c.pieces}, {"rr", c.check.rr}, {"degree", c.check.degree},
                     {"genus", c.check.genus}, {"pass", c.check.pass}, {"annuli", c.annuli},
                     {"mode_agree", c.annuli_mode_agree}, {"spectral_checked", c.spectral_checked},
                     {"spectral_agree", c.spectral_agree}});
  }
  Json rep{{"seed", cfg.seed}, {"count", opt.count}, {"rr_pass", passed}, {"failures", s.failures()},
           {"cases", cases}};
  emit(cfg, out, "fuzz", csv.str(), rep);
  err << passed << "/" << s.cases.size() << " Riemann-Roch cross-checks pass, " << s.failures()
      << " failing case(s)\n";
  return s.failures() == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

void apply_thread_limit() {
  const char* v = std::getenv("BS_LOCALIZE_THREADS");
  if (!v || !*v) return;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (*end == '\0' && n > 0) omp_set_num_threads(static_cast<int>(n));
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.subcommand == "validate") return cmd_validate(cfg, out, err);
    if (cfg.subcommand == "rr") return cmd_rr(cfg, out, err);
    if (cfg.subcommand == "modes") return cmd_modes(cfg, out, err);
    if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg, out, err);
    if (cfg.subcommand == "sweep") return cmd_sweep(cfg, out, err);
    if (cfg.subcommand == "product") return cmd_product(cfg, out, err);
    if (cfg.subcommand == "fuzz") return cmd_fuzz(cfg, out, err);
    err << "unknown subcommand '" << cfg.subcommand << "'\n";
    return kExitInput;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::Unresolved:
      case ErrorCode::EmptyKernel:
      case ErrorCode::UnresolvedFactor: return kExitUnresolved;
      case ErrorCode::CountMismatch: return kExitCheckFailed;
      default: return kExitInput;
    }
  } catch (const Json::exception& e) {
    err << "InputError: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "InputError: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace bsloc
