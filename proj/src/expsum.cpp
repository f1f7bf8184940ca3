#include "declab/expsum.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "declab/fft.hpp"
#include "declab/mixed_norm.hpp"
#include "declab/parallel.hpp"

namespace declab {

CoeffRule parse_coeff_rule(const std::string& name) {
  if (name == "ones") return CoeffRule::Ones;
  if (name == "single") return CoeffRule::Single;
  if (name == "random") return CoeffRule::RandomUnimodular;
  throw std::invalid_argument("unknown coefficient rule '" + name + "'");
}

const char* coeff_rule_name(CoeffRule rule) {
  switch (rule) {
    case CoeffRule::Ones: return "ones";
    case CoeffRule::Single: return "single";
    case CoeffRule::RandomUnimodular: return "random";
  }
  return "?";
}

namespace {

long long int_pow(long long b, int e) {
  long long out = 1;
  while (e-- > 0) out *= b;
  return out;
}

std::complex<double> unit_phase(double turns) {
  const double a = 2.0 * std::numbers::pi * turns;
  return {std::cos(a), std::sin(a)};
}

void check_grid(const CoefficientVector& coeffs, const GridSpec& grid) {
  if (!grid.periodic) throw std::invalid_argument("exponential sums need a torus grid");
  if (grid.dim() != coeffs.dim) throw std::invalid_argument("grid dimension mismatch");
  const long long min_x = 4LL * coeffs.N;
  const long long min_t = 8LL * coeffs.dim * coeffs.N * coeffs.N;
  for (int i = 0; i < grid.dim(); ++i) {
    if (grid.cells(i) < min_x) {
      throw std::invalid_argument("undersampled grid: need at least 4N spatial samples per axis");
    }
    if (!is_pow2(grid.cells(i))) {
      throw std::invalid_argument("spatial sample count must be a power of two");
    }
  }
  if (grid.n_t < min_t) {
    throw std::invalid_argument("undersampled grid: need at least 8 d N^2 time slices");
  }
}

// One time slice: zero-padded spectrum modulated by e(|n|^2 t), then an
// unnormalized inverse FFT per axis.
void expsum_slice(const CoefficientVector& coeffs, const GridSpec& grid, double t,
                  std::vector<std::complex<double>>& buf,
                  std::vector<std::complex<double>>& column) {
  const int d = coeffs.dim;
  const int N = coeffs.N;
  const long long X = grid.cells(0);
  const long long total = grid.spatial_count();
  buf.assign(total, std::complex<double>(0.0, 0.0));

  std::vector<int> n(d, 1);
  for (long long flat = 0; flat < coeffs.a.size(); ++flat) {
    long long pos = 0;
    long long norm2 = 0;
    for (int i = 0; i < d; ++i) {
      pos = pos * X + n[i];
      norm2 += static_cast<long long>(n[i]) * n[i];
    }
    buf[pos] = coeffs.a(flat) * unit_phase(static_cast<double>(norm2) * t);
    for (int i = d - 1; i >= 0; --i) {
      if (++n[i] <= N) break;
      n[i] = 1;
    }
  }

  if (d == 1) {
    fft_pow2({buf.data(), static_cast<std::size_t>(X)}, +1);
    return;
  }
  // separable transform: contiguous last axis, then strided leading axes
  const long long rows = total / X;
  for (long long rline = 0; rline < rows; ++rline) {
    fft_pow2({buf.data() + rline * X, static_cast<std::size_t>(X)}, +1);
  }
  column.resize(X);
  for (int axis = d - 2; axis >= 0; --axis) {
    long long stride = 1;
    for (int i = axis + 1; i < d; ++i) stride *= X;
    const long long block = stride * X;
    for (long long base = 0; base < total; base += block) {
      for (long long off = 0; off < stride; ++off) {
        for (long long k = 0; k < X; ++k) column[k] = buf[base + off + k * stride];
        fft_pow2({column.data(), static_cast<std::size_t>(X)}, +1);
        for (long long k = 0; k < X; ++k) buf[base + off + k * stride] = column[k];
      }
    }
  }
}

}  // namespace

CoefficientVector make_coefficients(CoeffRule rule, int N, int dim, std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  CoefficientVector c;
  c.N = N;
  c.dim = dim;
  c.rule = rule;
  c.seed = seed;
  const long long size = int_pow(N, dim);
  switch (rule) {
    case CoeffRule::Ones:
      c.a = Eigen::ArrayXcd::Ones(size);
      break;
    case CoeffRule::Single:
      c.a = Eigen::ArrayXcd::Zero(size);
      c.a(0) = 1.0;  // n = (1, ..., 1)
      break;
    case CoeffRule::RandomUnimodular: {
      c.a.resize(size);
      std::mt19937_64 rng(seed);
      for (long long i = 0; i < size; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        c.a(i) = unit_phase(u);
      }
      break;
    }
  }
  return c;
}

GridSpec expsum_grid(int N, int dim, int oversample) {
  if (oversample < 4) throw std::invalid_argument("oversample must be >= 4");
  const long long X = next_pow2(static_cast<long long>(oversample) * N);
  const long long T = 2LL * oversample * dim * N * N;
  return GridSpec::torus(dim, X, T);
}

SampledField synthesize_expsum(const CoefficientVector& coeffs, const GridSpec& grid) {
  check_grid(coeffs, grid);
  SampledField field = SampledField::zero(grid);
  parallel_chunks(grid.n_t, 0, [&](long long begin, long long end, int) {
    std::vector<std::complex<double>> buf, column;
    for (long long j = begin; j < end; ++j) {
      expsum_slice(coeffs, grid, grid.t_coord(j), buf, column);
      field.slices[j] = Eigen::Map<const Eigen::ArrayXcd>(buf.data(), grid.spatial_count());
    }
  });
  return field;
}

GrowthSample expsum_ratio(const CoefficientVector& coeffs, Exponent q, Exponent r, int oversample,
                          int workers) {
  const GridSpec grid = expsum_grid(coeffs.N, coeffs.dim, oversample);
  check_grid(coeffs, grid);
  const double vol = grid.cell_volume();
  std::vector<double> inner(grid.n_t);
  parallel_chunks(grid.n_t, workers, [&](long long begin, long long end, int) {
    std::vector<std::complex<double>> buf, column;
    for (long long j = begin; j < end; ++j) {
      expsum_slice(coeffs, grid, grid.t_coord(j), buf, column);
      inner[j] = slice_norm({buf.data(), buf.size()}, vol, r);
    }
  });
  GrowthSample out;
  out.N = coeffs.N;
  out.q = q;
  out.r = r;
  out.ratio = time_norm(inner, grid.h_t, q) / coeffs.l2();
  return out;
}

FitResult growth_fit(CoeffRule rule, std::span<const int> ladder, int dim, Exponent q, Exponent r,
                     int oversample, std::uint64_t seed, int workers) {
  std::set<int> distinct(ladder.begin(), ladder.end());
  if (distinct.size() < 3) throw std::invalid_argument("N-ladder needs at least 3 distinct sizes");
  std::vector<std::array<double, 2>> pts;
  pts.reserve(ladder.size());
  for (int N : ladder) {
    const auto coeffs = make_coefficients(rule, N, dim, seed);
    const auto sample = expsum_ratio(coeffs, q, r, oversample, workers);
    pts.push_back({std::log(static_cast<double>(N)), std::log(sample.ratio)});
  }
  return fit_line(pts);
}

}  // namespace declab
