#include "declab/exponents.hpp"

#include <algorithm>
#include <cmath>

namespace declab {

namespace {

void require_dim(const ExponentTriple& t) {
  if (t.dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

// Strichartz-line form evaluated at (a, b) = (1/q, 1/r). The tuned-bush term
// is the same form at a = b, so the diagonal identity holds bit for bit.
double line_term(int d, double a, double b) { return d / 2.0 - (d * b + 2.0 * a); }

}  // namespace

const char* region_case_name(RegionCase c) {
  switch (c) {
    case RegionCase::InRegion: return "InRegion";
    case RegionCase::QleR: return "CaseQleR";
    case RegionCase::QgeR: return "CaseQgeR";
  }
  return "?";
}

bool in_region(const ExponentTriple& t) {
  require_dim(t);
  const double a = t.q.reciprocal();
  const double b = t.r.reciprocal();
  const double d = t.dim;
  return a <= 0.5 && b <= 0.5 && b >= d / (2.0 * (d + 2.0)) && 2.0 * a + d * b >= d / 2.0;
}

std::array<double, 4> lower_bound_terms(const ExponentTriple& t) {
  require_dim(t);
  const double a = t.q.reciprocal();
  const double b = t.r.reciprocal();
  const double d = t.dim;
  return {line_term(t.dim, a, b), d * (b - 0.5), d * (a - 0.5), line_term(t.dim, b, b)};
}

double lower_bound_exponent(const ExponentTriple& t) {
  auto terms = lower_bound_terms(t);
  double m = *std::max_element(terms.begin(), terms.end());
  return std::max(m, 0.0);
}

double sharp_exponent(const ExponentTriple& t) {
  require_dim(t);
  const double a = t.q.reciprocal();
  const double b = t.r.reciprocal();
  if (a > 0.5 || b > 0.5) {
    throw std::invalid_argument("sharp exponent is defined for q, r >= 2 only");
  }
  const double d = t.dim;
  if (in_region(t)) return 0.0;
  if (a >= b && b <= d / (2.0 * (d + 2.0))) {
    return line_term(t.dim, b, b);  // q <= r, r >= 2(d+2)/d
  }
  if (b >= a && 2.0 * a + d * b <= d / 2.0) {
    return line_term(t.dim, a, b);  // q >= r, Strichartz side
  }
  // Unreachable for q, r >= 2: the three cases cover the square.
  throw std::logic_error("no branch of the sharp exponent applies");
}

ExponentReport classify(const ExponentTriple& t) {
  ExponentReport rep;
  rep.in_region = in_region(t);
  rep.lower_bound = lower_bound_exponent(t);
  const double a = t.q.reciprocal();
  const double b = t.r.reciprocal();
  if (a <= 0.5 && b <= 0.5) {
    rep.sharp = sharp_exponent(t);
    const double d = t.dim;
    if (rep.in_region) {
      rep.branch = RegionCase::InRegion;
    } else if (a >= b && b <= d / (2.0 * (d + 2.0))) {
      rep.branch = RegionCase::QleR;
    } else {
      rep.branch = RegionCase::QgeR;
    }
  }
  return rep;
}

std::optional<double> discres_bound(const ExponentTriple& t) {
  require_dim(t);
  if (in_region(t)) return 0.0;
  if (t.dim >= 3) {
    const double d = t.dim;
    const double a = t.q.reciprocal();
    const double b = t.r.reciprocal();
    // (q, r) = (2, 2d/(d-2)), i.e. (1/q, 1/r) = (1/2, (d-2)/(2d)).
    if (std::abs(a - 0.5) <= 1e-12 && std::abs(b - (d - 2.0) / (2.0 * d)) <= 1e-12) {
      return 2.0 / d;
    }
  }
  return std::nullopt;
}

}  // namespace declab
