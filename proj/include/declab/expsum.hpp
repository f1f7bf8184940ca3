#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>

#include "declab/fit.hpp"
#include "declab/grid.hpp"
#include "declab/types.hpp"

namespace declab {

enum class CoeffRule { Ones, Single, RandomUnimodular };

CoeffRule parse_coeff_rule(const std::string& name);
const char* coeff_rule_name(CoeffRule rule);

/// Coefficients a_n for n in {1..N}^d, flattened lexicographically
/// (last axis fastest).
struct CoefficientVector {
  int N = 1;
  int dim = 1;
  CoeffRule rule = CoeffRule::Ones;
  std::uint64_t seed = 0;
  Eigen::ArrayXcd a;

  double l2() const { return std::sqrt(a.abs2().sum()); }
};

CoefficientVector make_coefficients(CoeffRule rule, int N, int dim, std::uint64_t seed = 0);

/// Unit torus grid for quadrature of the sum: X = next power of two at or
/// above oversample * N per axis, T = 2 * oversample * d * N^2 time slices.
/// oversample >= 4 keeps the synthesis exact and the norm quadrature gated.
GridSpec expsum_grid(int N, int dim, int oversample = 4);

/// Samples sum_n a_n e(n.x + |n|^2 t) on the grid: per time slice the
/// spectrum is modulated by e(|n|^2 t) and inverted with an FFT of size X
/// per axis, which interpolates the finite sum exactly at the nodes.
/// Rejects undersampled grids (X < 4N or T < 8 d N^2).
SampledField synthesize_expsum(const CoefficientVector& coeffs, const GridSpec& grid);

struct GrowthSample {
  int N = 0;
  Exponent q;
  Exponent r;
  double ratio = 0.0;
};

/// Mixed norm over T^d x [0,1] divided by the l2 norm of the coefficients.
GrowthSample expsum_ratio(const CoefficientVector& coeffs, Exponent q, Exponent r,
                          int oversample = 4, int workers = 0);

/// Least-squares slope of log(ratio) against log(N) over an N-ladder
/// of at least 3 distinct sizes.
FitResult growth_fit(CoeffRule rule, std::span<const int> ladder, int dim, Exponent q, Exponent r,
                     int oversample = 4, std::uint64_t seed = 0, int workers = 0);

}  // namespace declab
