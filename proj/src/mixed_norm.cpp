#include "declab/mixed_norm.hpp"

#include <algorithm>
#include <cmath>

namespace declab {

namespace {

constexpr std::ptrdiff_t kLeafSize = 64;

template <typename Term>
double pairwise_reduce(std::ptrdiff_t lo, std::ptrdiff_t hi, const Term& term) {
  if (hi - lo <= kLeafSize) {
    double s = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) s += term(i);
    return s;
  }
  const std::ptrdiff_t mid = lo + (hi - lo) / 2;
  return pairwise_reduce(lo, mid, term) + pairwise_reduce(mid, hi, term);
}

double int_power(double base, long long e) {
  double out = 1.0;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

bool integral(double r, long long& n) {
  const double rr = std::round(r);
  if (rr == r && rr >= 1.0 && rr <= 64.0) {
    n = static_cast<long long>(rr);
    return true;
  }
  return false;
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
  return pairwise_reduce(0, static_cast<std::ptrdiff_t>(v.size()),
                         [&](std::ptrdiff_t i) { return v[i]; });
}

double pairwise_abs_pow_sum(std::span<const std::complex<double>> v, double r) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  long long ir = 0;
  if (r == 2.0) {
    return pairwise_reduce(0, n, [&](std::ptrdiff_t i) { return std::norm(v[i]); });
  }
  if (r == 1.0) {
    return pairwise_reduce(0, n, [&](std::ptrdiff_t i) { return std::abs(v[i]); });
  }
  if (integral(r, ir)) {
    if (ir % 2 == 0) {
      return pairwise_reduce(
          0, n, [&](std::ptrdiff_t i) { return int_power(std::norm(v[i]), ir / 2); });
    }
    return pairwise_reduce(0, n, [&](std::ptrdiff_t i) {
      const double m2 = std::norm(v[i]);
      return std::sqrt(m2) * int_power(m2, (ir - 1) / 2);
    });
  }
  return pairwise_reduce(0, n,
                         [&](std::ptrdiff_t i) { return std::pow(std::norm(v[i]), r / 2.0); });
}

double slice_norm(std::span<const std::complex<double>> slice, double cell_volume, Exponent r) {
  if (r.infinite) {
    double m = 0.0;
    for (const auto& z : slice) m = std::max(m, std::abs(z));
    return m;
  }
  return std::pow(pairwise_abs_pow_sum(slice, r.value) * cell_volume, 1.0 / r.value);
}

double time_norm(std::span<const double> inner, double h_t, Exponent q) {
  if (q.infinite) {
    double m = 0.0;
    for (double v : inner) m = std::max(m, v);
    return m;
  }
  const double qq = q.value;
  const auto n = static_cast<std::ptrdiff_t>(inner.size());
  long long iq = 0;
  double sum;
  if (qq == 2.0) {
    sum = pairwise_reduce(0, n, [&](std::ptrdiff_t i) { return inner[i] * inner[i]; });
  } else if (qq == 1.0) {
    sum = pairwise_reduce(0, n, [&](std::ptrdiff_t i) { return inner[i]; });
  } else if (integral(qq, iq)) {
    sum = pairwise_reduce(0, n, [&](std::ptrdiff_t i) { return int_power(inner[i], iq); });
  } else {
    sum = pairwise_reduce(0, n, [&](std::ptrdiff_t i) { return std::pow(inner[i], qq); });
  }
  return std::pow(sum * h_t, 1.0 / qq);
}

double mixed_norm(const SampledField& field, Exponent q, Exponent r) {
  if (field.slices.empty()) throw std::invalid_argument("field has no slices");
  std::vector<double> inner(field.slices.size());
  const double vol = field.grid.cell_volume();
  for (std::size_t j = 0; j < field.slices.size(); ++j) {
    const auto& s = field.slices[j];
    inner[j] = slice_norm({s.data(), static_cast<std::size_t>(s.size())}, vol, r);
  }
  return time_norm(inner, field.grid.h_t, q);
}

double l2_aggregate(std::span<const double> norms) {
  const auto n = static_cast<std::ptrdiff_t>(norms.size());
  return std::sqrt(pairwise_reduce(0, n, [&](std::ptrdiff_t i) { return norms[i] * norms[i]; }));
}

std::pair<double, double> homogeneity_check(const SampledField& field, Exponent q, Exponent r,
                                            std::complex<double> c) {
  SampledField scaled;
  scaled.grid = field.grid;
  scaled.slices.reserve(field.slices.size());
  for (const auto& s : field.slices) scaled.slices.push_back(s * c);
  return {mixed_norm(scaled, q, r), std::abs(c) * mixed_norm(field, q, r)};
}

}  // namespace declab
