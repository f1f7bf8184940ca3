#pragma once

#include <array>
#include <optional>

#include "declab/types.hpp"

namespace declab {

struct ExponentTriple {
  Exponent q;
  Exponent r;
  int dim = 1;
};

inline ExponentTriple triple(Exponent q, Exponent r, int dim) { return {q, r, dim}; }

enum class RegionCase { InRegion, QleR, QgeR };

const char* region_case_name(RegionCase c);

/// Verdict for one (q, r, d): membership in the decoupling region, the
/// four-term lower-bound exponent, and (for q, r >= 2) the sharp exponent.
struct ExponentReport {
  bool in_region = false;
  double lower_bound = 0.0;
  std::optional<double> sharp;
  std::optional<RegionCase> branch;
};

/// True iff 2 <= q <= inf, 2 <= r <= 2(d+2)/d and 2/q + d/r >= d/2.
bool in_region(const ExponentTriple& t);

/// The four closed forms behind the lower-bound max, in order:
/// [0] d/2 - d/r - 2/q   (bush)
/// [1] d(1/r - 1/2)      (space-separated)
/// [2] d(1/q - 1/2)      (time-separated)
/// [3] d/2 - (d+2)/r     (tuned bush)
std::array<double, 4> lower_bound_terms(const ExponentTriple& t);

/// max of the four terms, clamped at 0.
double lower_bound_exponent(const ExponentTriple& t);

/// Sharp decoupling exponent for q, r >= 2 (throws otherwise): 0 inside the
/// region, else the matching outer-case closed form.
double sharp_exponent(const ExponentTriple& t);

ExponentReport classify(const ExponentTriple& t);

/// Proven growth exponent for the normalized torus exponential sum:
/// 0 inside the region, 2/d at (q, r) = (2, 2d/(d-2)) for d >= 3,
/// absent elsewhere (no claim).
std::optional<double> discres_bound(const ExponentTriple& t);

}  // namespace declab
