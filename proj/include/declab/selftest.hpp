#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "declab/families.hpp"

namespace declab {

struct SelftestConfig {
  int m = 4;
  SynthesisOptions synth;
  double sep_exponent = 4.0;
  int oversample = 4;
  std::uint64_t seed = 0x5eedULL;
};

struct CheckOutcome {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckOutcome> checks;

  int total() const { return static_cast<int>(checks.size()); }
  int passed() const {
    int n = 0;
    for (const auto& c : checks) n += c.ok;
    return n;
  }
  bool all_ok() const { return passed() == total(); }
};

std::vector<std::string> selftest_suite_names();

/// Runs the per-module invariant suites. filter selects one suite by name;
/// empty runs all.
std::vector<SuiteResult> run_selftests(const SelftestConfig& cfg, const std::string& filter = "");

/// Named checks reused by the acceptance harness.
namespace checks {

CheckOutcome exponent_corners();
CheckOutcome exponent_sweep(std::uint64_t seed, int count);
CheckOutcome envelope_majorant(int m);
CheckOutcome envelope_fourier_support();
CheckOutcome envelope_shell_decay(int m, std::uint64_t seed);
CheckOutcome mixed_norm_box_oracle();
CheckOutcome mixed_norm_gaussian_oracle();
CheckOutcome geometry_ball_containment_lemma();
CheckOutcome geometry_tube_disjointness_lemma();
/// The disjointness scan pinned to delta in {1/8, 1/16} with M = delta^{-1/4}.
/// At those scales the lattice spacing has not outgrown the doubled dilated
/// tube width, so adjacent tubes still overlap and the scan reports it.
CheckOutcome geometry_tube_disjointness_pinned_scales();
CheckOutcome geometry_tuned_containment_lemma();
CheckOutcome expsum_matches_direct(int oversample, std::uint64_t seed);
CheckOutcome expsum_parseval(int oversample, std::uint64_t seed, int workers);

}  // namespace checks

}  // namespace declab
