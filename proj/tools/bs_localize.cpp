#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "bsloc/cli.hpp"
#include "bsloc/error.hpp"
#include "bsloc/winding.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) v.push_back(bsloc::parse_decimal(item).convert_to<double>());
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  bsloc::RunConfig cfg;
  std::string format = "csv";
  std::string t_text;

  CLI::App app{"Local Riemann-Roch numbers by Bohr-Sommerfeld localization"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--tol", cfg.tol, "lattice tolerance in winding units")->capture_default_str();
  app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out-dir", cfg.out_dir, "write report files here");
  app.add_option("--seed", cfg.seed, "64-bit run seed");

  auto* validate = app.add_subcommand("validate", "check assemblies, pieces or models");
  validate->add_option("inputs", cfg.inputs)->required();

  auto* rr = app.add_subcommand("rr", "local indices and the total Riemann-Roch number");
  rr->add_option("assembly", cfg.inputs)->required();
  rr->add_flag("--cross-check", cfg.cross_check, "compare with degree + 1 - genus");

  auto* modes = app.add_subcommand("modes", "square-integrable Fourier modes of a cylinder");
  modes->add_option("model", cfg.inputs)->required();
  modes->add_option("--t", t_text, "deformation parameter");

  auto* spectrum = app.add_subcommand("spectrum", "discretized spectrum and index at one t");
  spectrum->add_option("model", cfg.inputs)->required();
  spectrum->add_option("--t", t_text, "deformation parameter");
  spectrum->add_option("--grid", cfg.grid, "cells along x");
  spectrum->add_option("--modes", cfg.modes, "fiber mode cutoff");
  spectrum->add_option("--delta", cfg.delta, "localization radius");

  auto* sweep = app.add_subcommand("sweep", "spectrum across increasing t");
  sweep->add_option("model", cfg.inputs)->required();
  sweep->add_option("--t", t_text, "comma-separated t values");
  sweep->add_option("--grid", cfg.grid, "cells along x");
  sweep->add_option("--modes", cfg.modes, "fiber mode cutoff");
  sweep->add_option("--delta", cfg.delta, "localization radius");

  auto* product = app.add_subcommand("product", "index of a product of local models");
  product->add_option("models", cfg.inputs)->required();

  auto* fuzz = app.add_subcommand("fuzz", "random closed assemblies through all engines");
  fuzz->add_option("--count", cfg.count, "number of cases");
  fuzz->add_option("--spectral-samples", cfg.spectral_samples, "annuli checked spectrally");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : bsloc::kExitInput;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? bsloc::OutputFormat::Json : bsloc::OutputFormat::Csv;
  try {
    if (!t_text.empty()) {
      if (cfg.subcommand == "sweep") cfg.t_list = parse_list(t_text);
      else cfg.t = bsloc::parse_decimal(t_text).convert_to<double>();
    }
  } catch (const bsloc::Error& e) {
    std::cerr << e.what() << "\n";
    return bsloc::kExitInput;
  }
  bsloc::apply_thread_limit();
  return bsloc::run(cfg, std::cout, std::cerr);
}
