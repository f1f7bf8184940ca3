#include "declab/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "declab/parallel.hpp"

namespace declab {

FamilyKind parse_family(const std::string& name) {
  if (name == "bush") return FamilyKind::Bush;
  if (name == "space") return FamilyKind::SpaceSeparated;
  if (name == "time") return FamilyKind::TimeSeparated;
  if (name == "tunedbush") return FamilyKind::TunedBush;
  throw std::invalid_argument("unknown family '" + name + "'");
}

const char* family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Bush: return "bush";
    case FamilyKind::SpaceSeparated: return "space";
    case FamilyKind::TimeSeparated: return "time";
    case FamilyKind::TunedBush: return "tunedbush";
  }
  return "?";
}

namespace {

void validate(const FamilyParams& p) {
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (p.dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(p.sep_exponent >= 3.0)) throw std::invalid_argument("sep_exponent must be >= 3");
  if (!(p.eps0 > 0.0 && p.eps0 < 1.0)) throw std::invalid_argument("eps0 must lie in (0, 1)");
}

std::complex<double> unit_phase(double turns) {
  const double a = 2.0 * std::numbers::pi * turns;
  return {std::cos(a), std::sin(a)};
}

double pow_int(double base, int e) {
  double out = 1.0;
  while (e-- > 0) out *= base;
  return out;
}

// Reusable slice buffer with dirty-span tracking so that clearing costs only
// what the previous slice touched.
struct Row {
  Eigen::ArrayXcd data;
  long long lo = 0;
  long long hi = 0;

  void init(long long n) {
    data = Eigen::ArrayXcd::Zero(n);
    lo = hi = 0;
  }
  void clear() {
    if (hi > lo) data.segment(lo, hi - lo).setZero();
    lo = hi = 0;
  }
  void touch(long long a, long long b) {
    if (a >= b) return;
    if (hi <= lo) {
      lo = a;
      hi = b;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  }
  std::span<const std::complex<double>> dirty() const {
    return {data.data() + lo, static_cast<std::size_t>(hi - lo)};
  }
};

struct SynthScratch {
  std::vector<std::vector<double>> phis;
  std::vector<std::vector<std::complex<double>>> phases;
  std::vector<long long> win_lo, win_hi;

  void init(int d) {
    phis.resize(d);
    phases.resize(d);
    win_lo.resize(d);
    win_hi.resize(d);
  }
};

// Adds one packet's contribution on the slice at time t. The per-axis index
// windows come from the monotone majorant of phi, so they cover every sample
// where the envelope can exceed the cutoff; the cutoff test itself is exact.
void add_packet(const WavepacketSpec& wp, const GridSpec& g, double t, double cutoff,
                SynthScratch& s, Row& row) {
  const int d = g.dim();
  const auto& ep = wp.params;
  const double c = ep.norm_const;
  const double tp = t - wp.shift(d);
  const double f_t = phi(2.0 * d * wp.delta * wp.delta * tp, ep);
  const double c_dm1 = pow_int(c, d - 1);
  if (f_t * c_dm1 * c <= cutoff) return;

  const double tau = cutoff / (f_t * c_dm1);
  const double halfwidth =
      (2.0 * ep.m / (std::numbers::pi * wp.delta)) * std::pow(c / tau, 1.0 / (2.0 * ep.m));

  for (int i = 0; i < d; ++i) {
    const double center = wp.shift(i) - 2.0 * wp.omega(i) * tp;
    const double a = (center - halfwidth - g.x_min(i)) / g.h_x - 0.5;
    const double b = (center + halfwidth - g.x_min(i)) / g.h_x - 0.5;
    s.win_lo[i] = std::max<long long>(0, static_cast<long long>(std::ceil(a - 1e-9)));
    s.win_hi[i] = std::min<long long>(g.cells(i), static_cast<long long>(std::floor(b + 1e-9)) + 1);
    if (s.win_lo[i] >= s.win_hi[i]) return;
  }

  for (int i = 0; i < d; ++i) {
    const long long len = s.win_hi[i] - s.win_lo[i];
    s.phis[i].resize(len);
    s.phases[i].resize(len);
    const double center = wp.shift(i) - 2.0 * wp.omega(i) * tp;
    const double x0 = g.x_coord(i, s.win_lo[i]);
    // phi(delta (x - center)) = c * sinc(v)^{2m} at v = delta (x - center) / 2m;
    // sin(pi v) advances by a fixed rotation from sample to sample.
    const double v0 = wp.delta * (x0 - center) / (2.0 * ep.m);
    const double dv = wp.delta * g.h_x / (2.0 * ep.m);
    std::complex<double> z = unit_phase(0.5 * v0);
    const std::complex<double> zstep = unit_phase(0.5 * dv);
    for (long long k = 0; k < len; ++k) {
      const double v = v0 + k * dv;
      double sv;
      if (std::abs(v) < 1e-4) {
        sv = sinc(v);
      } else {
        sv = z.imag() / (std::numbers::pi * v);
      }
      double p2 = sv * sv, out = 1.0, base = p2;
      int e = ep.m;
      while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
      }
      s.phis[i][k] = c * out;
      z *= zstep;
    }
    std::complex<double> ph = unit_phase(wp.omega(i) * (x0 - wp.shift(i)));
    const std::complex<double> phstep = unit_phase(wp.omega(i) * g.h_x);
    for (long long k = 0; k < len; ++k) {
      s.phases[i][k] = ph;
      ph *= phstep;
    }
  }

  const std::complex<double> tmod = wp.amplitude * unit_phase(wp.omega.squaredNorm() * tp);
  std::complex<double>* out = row.data.data();

  if (d == 1) {
    const long long lo = s.win_lo[0], len = s.win_hi[0] - lo;
    const double* pv = s.phis[0].data();
    const std::complex<double>* ph = s.phases[0].data();
    for (long long k = 0; k < len; ++k) {
      const double env = f_t * pv[k];
      if (env > cutoff) out[lo + k] += tmod * ph[k] * env;
    }
    row.touch(lo, s.win_hi[0]);
    return;
  }

  // generic d: odometer over leading axes, contiguous inner loop on the last
  std::vector<long long> strides(d);
  strides[d - 1] = 1;
  for (int i = d - 2; i >= 0; --i) strides[i] = strides[i + 1] * g.cells(i + 1);
  std::vector<long long> idx(d - 1, 0);
  long long flat_lo = 0, flat_hi = 0;
  for (int i = 0; i < d; ++i) {
    flat_lo += s.win_lo[i] * strides[i];
    flat_hi += (s.win_hi[i] - 1) * strides[i];
  }
  row.touch(flat_lo, flat_hi + 1);
  while (true) {
    double env_pre = f_t;
    std::complex<double> ph_pre = tmod;
    long long base = s.win_lo[d - 1] * strides[d - 1];
    for (int i = 0; i < d - 1; ++i) {
      env_pre *= s.phis[i][idx[i]];
      ph_pre *= s.phases[i][idx[i]];
      base += (s.win_lo[i] + idx[i]) * strides[i];
    }
    const long long len = s.win_hi[d - 1] - s.win_lo[d - 1];
    const double* pv = s.phis[d - 1].data();
    const std::complex<double>* ph = s.phases[d - 1].data();
    for (long long k = 0; k < len; ++k) {
      const double env = env_pre * pv[k];
      if (env > cutoff) out[base + k] += ph_pre * ph[k] * env;
    }
    int axis = d - 2;
    for (; axis >= 0; --axis) {
      if (++idx[axis] < s.win_hi[axis] - s.win_lo[axis]) break;
      idx[axis] = 0;
    }
    if (axis < 0) break;
  }
}

Eigen::VectorXd spacetime_zero(int d) { return Eigen::VectorXd::Zero(d + 1); }

}  // namespace

FamilySpec build_family(FamilyKind kind, const FamilyParams& params) {
  validate(params);
  const FrequencyNet net = build_net(params.delta, params.dim);
  const int d = params.dim;

  FamilySpec spec;
  spec.kind = kind;
  spec.params = params;
  spec.groups.resize(net.count());

  TunedLattice lattice;
  if (kind == FamilyKind::TunedBush) {
    lattice = build_tuned_lattice(params.delta, d, params.eps0);
  }
  const double spacing = std::pow(params.delta, -params.sep_exponent);

  for (long long i = 0; i < net.count(); ++i) {
    WavepacketSpec wp;
    wp.omega = net.points.col(i);
    wp.delta = params.delta;
    wp.params = params.envelope;
    switch (kind) {
      case FamilyKind::Bush:
        wp.shift = spacetime_zero(d);
        spec.groups[i].push_back(wp);
        break;
      case FamilyKind::SpaceSeparated:
        wp.shift = spacetime_zero(d);
        wp.shift(0) = static_cast<double>(i) * spacing;
        spec.groups[i].push_back(wp);
        break;
      case FamilyKind::TimeSeparated:
        wp.shift = spacetime_zero(d);
        wp.shift(d) = static_cast<double>(i) * spacing;
        spec.groups[i].push_back(wp);
        break;
      case FamilyKind::TunedBush:
        for (long long k = 0; k < lattice.centers.cols(); ++k) {
          wp.shift = lattice.centers.col(k);
          spec.groups[i].push_back(wp);
        }
        break;
    }
  }
  return spec;
}

GridSpec auto_grid(const FamilySpec& spec, const SynthesisOptions& opts) {
  if (!(opts.trunc >= 2.0)) throw std::invalid_argument("trunc must be >= 2");
  const int d = spec.params.dim;
  const double delta = spec.params.delta;
  const double half_t = opts.trunc / (2.0 * d * delta * delta);

  Eigen::VectorXd x_lo = Eigen::VectorXd::Constant(d, std::numeric_limits<double>::infinity());
  Eigen::VectorXd x_hi = -x_lo;
  double t_lo = std::numeric_limits<double>::infinity();
  double t_hi = -t_lo;
  for (const auto& group : spec.groups) {
    for (const auto& wp : group) {
      t_lo = std::min(t_lo, wp.shift(d) - half_t);
      t_hi = std::max(t_hi, wp.shift(d) + half_t);
      for (int i = 0; i < d; ++i) {
        const double half_x = opts.trunc / delta + 2.0 * std::abs(wp.omega(i)) * half_t;
        x_lo(i) = std::min(x_lo(i), wp.shift(i) - half_x);
        x_hi(i) = std::max(x_hi(i), wp.shift(i) + half_x);
      }
    }
  }
  if (!(t_lo < t_hi)) throw std::invalid_argument("family has no wavepackets");

  for (int i = 0; i < d; ++i) {
    x_lo(i) = std::floor(x_lo(i) / opts.h_x) * opts.h_x;
    x_hi(i) = std::ceil(x_hi(i) / opts.h_x) * opts.h_x;
  }
  t_lo = std::floor(t_lo / opts.h_t) * opts.h_t;
  t_hi = std::ceil(t_hi / opts.h_t) * opts.h_t;

  GridSpec grid = GridSpec::euclidean(x_lo, x_hi, t_lo, t_hi, opts.h_x, opts.h_t);
  if (grid.total_samples() > opts.sample_budget) {
    throw BudgetError(grid.total_samples(), opts.sample_budget);
  }
  return grid;
}

SampledField synthesize_field(const FamilySpec& spec, const GridSpec& grid,
                              const SynthesisOptions& opts) {
  SampledField field = SampledField::zero(grid);
  const long long nx = grid.spatial_count();
  parallel_chunks(grid.n_t, opts.workers, [&](long long begin, long long end, int) {
    SynthScratch scratch;
    scratch.init(grid.dim());
    Row row;
    row.init(nx);
    for (long long j = begin; j < end; ++j) {
      row.clear();
      const double t = grid.t_coord(j);
      for (const auto& group : spec.groups) {
        for (const auto& wp : group) add_packet(wp, grid, t, opts.tail_cutoff, scratch, row);
      }
      field.slices[j] = row.data;
    }
  });
  return field;
}

DecouplingSample decoupling_ratio(FamilyKind kind, const FamilyParams& params, Exponent q,
                                  Exponent r, const SynthesisOptions& opts) {
  const FamilySpec spec = build_family(kind, params);
  const GridSpec grid = auto_grid(spec, opts);
  const auto n_groups = static_cast<long long>(spec.groups.size());
  const long long nx = grid.spatial_count();
  const double vol = grid.cell_volume();

  // inner(g, j): slice norm of group g at slice j; last row is the full sum.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> inner(n_groups + 1,
                                                                               grid.n_t);
  parallel_chunks(grid.n_t, opts.workers, [&](long long begin, long long end, int) {
    SynthScratch scratch;
    scratch.init(grid.dim());
    std::vector<Row> rows(n_groups);
    for (auto& row : rows) row.init(nx);
    Row total;
    total.init(nx);
    for (long long j = begin; j < end; ++j) {
      const double t = grid.t_coord(j);
      total.clear();
      for (long long g = 0; g < n_groups; ++g) {
        rows[g].clear();
        for (const auto& wp : spec.groups[g]) {
          add_packet(wp, grid, t, opts.tail_cutoff, scratch, rows[g]);
        }
        inner(g, j) = slice_norm(rows[g].dirty(), vol, r);
        if (rows[g].hi > rows[g].lo) {
          const long long len = rows[g].hi - rows[g].lo;
          total.data.segment(rows[g].lo, len) += rows[g].data.segment(rows[g].lo, len);
          total.touch(rows[g].lo, rows[g].hi);
        }
      }
      inner(n_groups, j) = slice_norm(total.dirty(), vol, r);
    }
  });

  std::vector<double> parts(n_groups);
  for (long long g = 0; g < n_groups; ++g) {
    parts[g] = time_norm({inner.data() + g * grid.n_t, static_cast<std::size_t>(grid.n_t)},
                         grid.h_t, q);
  }
  DecouplingSample out;
  out.delta = params.delta;
  out.q = q;
  out.r = r;
  out.numerator = time_norm(
      {inner.data() + n_groups * grid.n_t, static_cast<std::size_t>(grid.n_t)}, grid.h_t, q);
  out.denominator = l2_aggregate(parts);
  if (!(out.denominator > 0.0)) throw std::runtime_error("family denominator vanished");
  out.ratio = out.numerator / out.denominator;
  return out;
}

FitResult fit_exponent(std::span<const DecouplingSample> samples) {
  if (samples.size() < 2) throw std::invalid_argument("fit needs at least 2 samples");
  std::vector<std::array<double, 2>> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) pts.push_back({std::log(1.0 / s.delta), std::log(s.ratio)});
  return fit_line(pts);
}

double family_exponent(FamilyKind kind, const ExponentTriple& t) {
  const auto terms = lower_bound_terms(t);
  switch (kind) {
    case FamilyKind::Bush: return terms[0];
    case FamilyKind::SpaceSeparated: return terms[1];
    case FamilyKind::TimeSeparated: return terms[2];
    case FamilyKind::TunedBush: return terms[3];
  }
  return 0.0;
}

}  // namespace declab
