#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bsloc {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::string out_dir;
  OutputFormat format = OutputFormat::Csv;
  bool cross_check = false;
  int count = 100;
  std::optional<double> t;  // overrides the model file
  std::vector<double> t_list;
  int grid = 0;   // 0 picks a default
  int modes = -1;
  double delta = 0.3;
  int spectral_samples = 5;
};

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitCheckFailed = 2, kExitUnresolved = 3 };

/// Run one subcommand; reports go to `out` (and to files under out_dir),
/// diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Caps OpenMP threads from BS_LOCALIZE_THREADS when set.
void apply_thread_limit();

}  // namespace bsloc
