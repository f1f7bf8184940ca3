#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "declab/grid.hpp"
#include "declab/types.hpp"

namespace declab {

/// Fixed-order pairwise sum; deterministic for a given (data, length).
double pairwise_sum(std::span<const double> v);

/// sum_i |v_i|^r by pairwise reduction. Integer r uses multiply chains,
/// everything else goes through pow.
double pairwise_abs_pow_sum(std::span<const std::complex<double>> v, double r);

/// L^r over one spatial slice: (sum |f|^r * cell_volume)^{1/r}, max for r = inf.
double slice_norm(std::span<const std::complex<double>> slice, double cell_volume, Exponent r);

/// L^q over the per-slice values: (sum inner^q * h_t)^{1/q}, max for q = inf.
double time_norm(std::span<const double> inner, double h_t, Exponent q);

/// Composite midpoint L^q_t L^r_x norm of a sampled field.
double mixed_norm(const SampledField& field, Exponent q, Exponent r);

/// Euclidean norm of a list of non-negative values.
double l2_aggregate(std::span<const double> norms);

/// Returns (|| c f ||, |c| || f ||); callers assert the two agree.
std::pair<double, double> homogeneity_check(const SampledField& field, Exponent q, Exponent r,
                                            std::complex<double> c);

}  // namespace declab
