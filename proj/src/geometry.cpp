#include "declab/geometry.hpp"

#include <cmath>

namespace declab {

bool cap_contains(const Cap& cap, const Eigen::VectorXd& xi, double eta) {
  const auto& w = cap.omega.coords;
  if (xi.size() != w.size()) throw std::invalid_argument("dimension mismatch");
  const int d = cap.omega.dim();
  if (((xi - w).array().abs() > cap.delta).any()) return false;
  const double surf = 2.0 * w.dot(xi - w) + w.squaredNorm();
  return std::abs(eta - surf) <= 2.0 * d * cap.delta * cap.delta;
}

Eigen::VectorXd ShearMap::apply(const Eigen::VectorXd& p, ShearMode mode) const {
  const int d = static_cast<int>(omega.size());
  if (p.size() != d + 1) throw std::invalid_argument("point must have size d+1");
  Eigen::VectorXd out = p;
  const double t = p(d);
  switch (mode) {
    case ShearMode::Forward:
      out(d) = 2.0 * omega.dot(p.head(d)) + t;
      break;
    case ShearMode::Inverse:
      out(d) = t - 2.0 * omega.dot(p.head(d));
      break;
    case ShearMode::Transpose:
      out.head(d) += 2.0 * t * omega;
      break;
    case ShearMode::InverseTranspose:
      out.head(d) -= 2.0 * t * omega;
      break;
  }
  return out;
}

Eigen::MatrixXd ShearMap::matrix(ShearMode mode) const {
  const int d = static_cast<int>(omega.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d + 1, d + 1);
  switch (mode) {
    case ShearMode::Forward: m.row(d).head(d) = 2.0 * omega.transpose(); break;
    case ShearMode::Inverse: m.row(d).head(d) = -2.0 * omega.transpose(); break;
    case ShearMode::Transpose: m.col(d).head(d) = 2.0 * omega; break;
    case ShearMode::InverseTranspose: m.col(d).head(d) = -2.0 * omega; break;
  }
  return m;
}

namespace {

// Half-widths of the axis box T_delta dilated by M.
inline double slab_x(double delta, double dilation) { return dilation / delta; }
inline double slab_t(double delta, double dilation, int d) {
  return dilation / (2.0 * d * delta * delta);
}

}  // namespace

bool tube_contains(const Tube& tube, const Eigen::VectorXd& p) {
  const int d = static_cast<int>(tube.omega.size());
  if (p.size() != d + 1 || tube.shift.size() != d + 1) {
    throw std::invalid_argument("point and shift must have size d+1");
  }
  const Eigen::VectorXd y = p - tube.shift;
  const double t = y(d);
  if (std::abs(t) > slab_t(tube.delta, tube.dilation, d)) return false;
  const double bx = slab_x(tube.delta, tube.dilation);
  for (int i = 0; i < d; ++i) {
    if (std::abs(y(i) + 2.0 * tube.omega(i) * t) > bx) return false;
  }
  return true;
}

bool tubes_disjoint(const Eigen::VectorXd& omega, double delta, double dilation,
                    const Eigen::VectorXd& shift_a, const Eigen::VectorXd& shift_b) {
  const int d = static_cast<int>(omega.size());
  if (shift_a.size() != d + 1 || shift_b.size() != d + 1) {
    throw std::invalid_argument("shifts must have size d+1");
  }
  // Translates of the symmetric convex body M T_omega^0 meet iff the shift
  // difference lies in its doubling; in sheared coordinates that is 2 M T_delta.
  const Eigen::VectorXd diff = shift_a - shift_b;
  const double dt = diff(d);
  bool meet = std::abs(dt) <= 2.0 * slab_t(delta, dilation, d);
  const double bx = 2.0 * slab_x(delta, dilation);
  for (int i = 0; meet && i < d; ++i) {
    meet = std::abs(diff(i) + 2.0 * omega(i) * dt) <= bx;
  }
  return !meet;
}

bool ball_in_tube(const Eigen::VectorXd& omega, double delta, double dilation,
                  const Eigen::VectorXd& tube_shift, const Eigen::VectorXd& center,
                  double radius) {
  if (radius < 0.0) throw std::invalid_argument("radius must be >= 0");
  const int d = static_cast<int>(omega.size());
  if (tube_shift.size() != d + 1 || center.size() != d + 1) {
    throw std::invalid_argument("points must have size d+1");
  }
  const Eigen::VectorXd y = center - tube_shift;
  const double t = y(d);
  if (slab_t(delta, dilation, d) - std::abs(t) < radius) return false;
  const double bx = slab_x(delta, dilation);
  for (int i = 0; i < d; ++i) {
    const double margin = bx - std::abs(y(i) + 2.0 * omega(i) * t);
    const double normal = std::sqrt(1.0 + 4.0 * omega(i) * omega(i));
    if (margin < radius * normal) return false;
  }
  return true;
}

FrequencyNet build_net(double delta, int dim) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("net spacing must lie in (0, 1]");
  }
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  const long long per_axis = static_cast<long long>(std::floor(2.0 / delta + 1e-9)) + 1;
  long long count = 1;
  for (int i = 0; i < dim; ++i) count *= per_axis;

  FrequencyNet net;
  net.delta = delta;
  net.dim = dim;
  net.points.resize(dim, count);
  Eigen::VectorXi idx = Eigen::VectorXi::Zero(dim);
  for (long long c = 0; c < count; ++c) {
    for (int i = 0; i < dim; ++i) net.points(i, c) = -1.0 + idx(i) * delta;
    // odometer, last axis fastest
    for (int i = dim - 1; i >= 0; --i) {
      if (++idx(i) < per_axis) break;
      idx(i) = 0;
    }
  }
  return net;
}

TunedLattice build_tuned_lattice(double delta, int dim, double eps0) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("lattice scale must lie in (0, 1)");
  }
  if (!(eps0 > 0.0 && eps0 < 1.0)) {
    throw std::invalid_argument("eps0 must lie in (0, 1)");
  }
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");

  const long long n_time = static_cast<long long>(std::ceil(1.0 / (delta * delta) - 1e-9));
  const long long n_space = static_cast<long long>(std::ceil(1.0 / delta - 1e-9));
  long long count = n_time;
  for (int i = 1; i < dim; ++i) count *= n_space;

  const double spacing = std::pow(delta, -1.0 - eps0);

  TunedLattice lat;
  lat.delta = delta;
  lat.eps0 = eps0;
  lat.ball_radius = kCoherenceRadius;
  lat.centers.resize(dim + 1, count);
  Eigen::VectorXi idx = Eigen::VectorXi::Zero(dim);  // idx(0) = k_1, time-paired
  for (long long c = 0; c < count; ++c) {
    for (int i = 0; i < dim; ++i) lat.centers(i, c) = idx(i) * spacing;
    lat.centers(dim, c) = idx(0);
    for (int i = dim - 1; i >= 0; --i) {
      const long long limit = (i == 0) ? n_time : n_space;
      if (++idx(i) < limit) break;
      idx(i) = 0;
    }
  }
  return lat;
}

}  // namespace declab
