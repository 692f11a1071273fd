#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bsloc/surface.hpp"

namespace bsloc {

/// Seed for case i of a run; stable across platforms.
std::uint64_t case_seed(std::uint64_t run_seed, std::uint64_t i);

/// A valid closed connected assembly with roughly `size` pieces. Lifts lie on
/// the lattice-avoiding grid {j/80}, so every check is exact.
SurfaceAssembly generate_random_assembly(std::uint64_t seed, int size);

/// Random acyclic-ended annulus profile with 2-6 samples.
HolonomyProfile generate_random_profile(std::uint64_t seed);

struct FuzzCase {
  std::uint64_t seed = 0;
  int pieces = 0;
  CrossCheck check;
  int annuli = 0;
  int annuli_mode_agree = 0;
  int spectral_checked = 0;
  int spectral_agree = 0;
};

struct FuzzOptions {
  int count = 100;
  std::uint64_t seed = 1;
  int max_size = 12;
  int spectral_samples = 5;  // annuli checked by the spectral engine per run
};

struct FuzzSummary {
  std::vector<FuzzCase> cases;
  int failures() const;
};

FuzzSummary run_fuzz_serial(const FuzzOptions& opt);
FuzzSummary run_fuzz(const FuzzOptions& opt);

/// Spectral index of an annulus profile starting at t, on a grid chosen to be
/// resolved. Unresolved attempts are retried with up to 4x the t and 4x the
/// padding; nullopt when every attempt is unresolved.
std::optional<long long> spectral_annulus_index(const HolonomyProfile& p, double t = 10.0);

}  // namespace bsloc
