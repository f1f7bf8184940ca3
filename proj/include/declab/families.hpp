#pragma once

#include <span>
#include <string>
#include <vector>

#include "declab/envelope.hpp"
#include "declab/exponents.hpp"
#include "declab/fit.hpp"
#include "declab/geometry.hpp"
#include "declab/grid.hpp"
#include "declab/mixed_norm.hpp"
#include "declab/types.hpp"

namespace declab {

enum class FamilyKind { Bush, SpaceSeparated, TimeSeparated, TunedBush };

FamilyKind parse_family(const std::string& name);
const char* family_name(FamilyKind kind);

struct FamilyParams {
  double delta = 0.25;
  int dim = 1;
  double sep_exponent = 4.0;  // shift spacing delta^{-sep_exponent}; >= 3
  double eps0 = 0.5;
  EnvelopeParams envelope = make_envelope_params(4);
};

/// One lower-bound family: per net frequency, the list of its wavepackets
/// (one shift each, except the tuned bush which carries every lattice center).
struct FamilySpec {
  FamilyKind kind;
  FamilyParams params;
  std::vector<std::vector<WavepacketSpec>> groups;

  long long packet_count() const {
    long long n = 0;
    for (const auto& g : groups) n += static_cast<long long>(g.size());
    return n;
  }
};

struct SynthesisOptions {
  double h_x = 0.125;
  double h_t = 0.125;
  double trunc = 8.0;          // grid covers the trunc-dilate of every tube
  double tail_cutoff = 1e-8;   // packets contribute only where envelope > cutoff
  long long sample_budget = 2'000'000'000;
  int workers = 0;
};

FamilySpec build_family(FamilyKind kind, const FamilyParams& params);

/// Smallest h-aligned grid containing the trunc-dilate of every shifted tube.
GridSpec auto_grid(const FamilySpec& spec, const SynthesisOptions& opts);

/// Pointwise sum of all wavepackets, each evaluated only where its envelope
/// exceeds the tail cutoff. Materializes the full field; the ratio driver
/// below streams slices instead.
SampledField synthesize_field(const FamilySpec& spec, const GridSpec& grid,
                              const SynthesisOptions& opts);

struct DecouplingSample {
  double delta = 0.0;
  Exponent q;
  Exponent r;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
};

/// Certified lower-bound ratio ||sum f||_{q,r} / (sum ||f_omega||^2)^{1/2}
/// on the family's auto grid, computed in one streamed pass over slices.
DecouplingSample decoupling_ratio(FamilyKind kind, const FamilyParams& params, Exponent q,
                                  Exponent r, const SynthesisOptions& opts);

/// Least-squares slope of log(ratio) against log(1/delta).
FitResult fit_exponent(std::span<const DecouplingSample> samples);

/// The lower-bound term the family realizes (unclamped closed form).
double family_exponent(FamilyKind kind, const ExponentTriple& t);

}  // namespace declab
