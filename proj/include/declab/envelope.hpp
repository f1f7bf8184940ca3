#pragma once

#include <Eigen/Dense>

#include <complex>

namespace declab {

/// Profile parameters for the majorant bump
///   phi(t) = c_m * sinc(t / 2m)^{2m},   sinc(u) = sin(pi u) / (pi u),
/// with c_m = sinc(1/2m)^{-2m} so that phi >= 1 on [-1, 1]. The Fourier
/// transform of phi is a 2m-fold box convolution supported in [-1/2, 1/2],
/// and phi decays like (1 + |t|)^{-2m}.
struct EnvelopeParams {
  int m = 4;
  double norm_const = 1.0;  // c_m
};

EnvelopeParams make_envelope_params(int m = 4);

/// sin(pi u) / (pi u), with the removable singularity evaluated by series.
double sinc(double u);

double phi(double t, const EnvelopeParams& params);

/// Monotone pointwise majorant of phi: c_m * min(1, (2m / (pi |t|))^{2m}).
double phi_majorant(double t, const EnvelopeParams& params);

/// One modulated, translated tube envelope: at a space-time point p,
///   value = amplitude * e((omega, |omega|^2) . (p - shift)) * env(p - shift)
/// where env(y) = phi(2 d delta^2 y_t) * prod_i phi(delta (y_i + 2 omega_i y_t))
/// and e(s) = exp(2 pi i s).
struct WavepacketSpec {
  Eigen::VectorXd omega;
  double delta;
  Eigen::VectorXd shift;  // size d+1, (x, t)
  EnvelopeParams params;
  std::complex<double> amplitude = 1.0;
};

double envelope_value(const WavepacketSpec& spec, const Eigen::VectorXd& p);

std::complex<double> wavepacket_value(const WavepacketSpec& spec, const Eigen::VectorXd& p);

}  // namespace declab
