#include "declab/envelope.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace declab {

namespace {

// (s^2)^m without pow; 2m is always even.
double even_power(double s, int m) {
  double p = s * s;
  double out = 1.0;
  double base = p;
  int e = m;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace

double sinc(double u) {
  const double x = std::numbers::pi * u;
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

EnvelopeParams make_envelope_params(int m) {
  if (m < 1) throw std::invalid_argument("decay order must be >= 1");
  EnvelopeParams p;
  p.m = m;
  p.norm_const = 1.0 / even_power(sinc(1.0 / (2.0 * m)), m);
  return p;
}

double phi(double t, const EnvelopeParams& params) {
  return params.norm_const * even_power(sinc(t / (2.0 * params.m)), params.m);
}

double phi_majorant(double t, const EnvelopeParams& params) {
  const double u = std::abs(t) * std::numbers::pi / (2.0 * params.m);
  if (u <= 1.0) return params.norm_const;
  return params.norm_const * even_power(1.0 / u, params.m);
}

double envelope_value(const WavepacketSpec& spec, const Eigen::VectorXd& p) {
  const int d = static_cast<int>(spec.omega.size());
  if (p.size() != d + 1 || spec.shift.size() != d + 1) {
    throw std::invalid_argument("point and shift must have size d+1");
  }
  const double t = p(d) - spec.shift(d);
  double value = phi(2.0 * d * spec.delta * spec.delta * t, spec.params);
  for (int i = 0; i < d; ++i) {
    const double sheared = p(i) - spec.shift(i) + 2.0 * spec.omega(i) * t;
    value *= phi(spec.delta * sheared, spec.params);
  }
  return value;
}

std::complex<double> wavepacket_value(const WavepacketSpec& spec, const Eigen::VectorXd& p) {
  const int d = static_cast<int>(spec.omega.size());
  const double t = p(d) - spec.shift(d);
  const double phase =
      spec.omega.dot(p.head(d) - spec.shift.head(d)) + spec.omega.squaredNorm() * t;
  const double angle = 2.0 * std::numbers::pi * phase;
  return spec.amplitude * std::complex<double>(std::cos(angle), std::sin(angle)) *
         envelope_value(spec, p);
}

}  // namespace declab
