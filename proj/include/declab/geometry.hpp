#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace declab {

/// A frequency center in [-1, 1]^d.
struct FreqPoint {
  Eigen::VectorXd coords;

  explicit FreqPoint(Eigen::VectorXd w) : coords(std::move(w)) {
    if ((coords.array().abs() > 1.0).any()) {
      throw std::invalid_argument("frequency coordinates must lie in [-1, 1]");
    }
  }
  int dim() const { return static_cast<int>(coords.size()); }
};

/// Parallelepiped neighborhood of the paraboloid over a delta-ball at omega:
/// |xi_i - omega_i| <= delta and |eta - 2 omega.(xi - omega) - |omega|^2| <= 2 d delta^2.
struct Cap {
  FreqPoint omega;
  double delta;

  Cap(FreqPoint w, double del) : omega(std::move(w)), delta(del) {
    if (!(delta > 0.0 && delta < 1.0)) {
      throw std::invalid_argument("cap scale must lie in (0, 1)");
    }
  }
};

bool cap_contains(const Cap& cap, const Eigen::VectorXd& xi, double eta);

enum class ShearMode { Forward, Inverse, Transpose, InverseTranspose };

/// Unimodular shear on space-time points (x, t): identity block on the
/// spatial rows, bottom row (2 omega, 1). Points are vectors of size d+1
/// with t last.
struct ShearMap {
  Eigen::VectorXd omega;

  Eigen::VectorXd apply(const Eigen::VectorXd& p, ShearMode mode) const;
  Eigen::MatrixXd matrix(ShearMode mode) const;
};

/// Dilated and shifted dual tube: membership iff, after subtracting the shift,
/// |x_i + 2 omega_i t| <= M / delta for all i and |t| <= M / (2 d delta^2).
struct Tube {
  Eigen::VectorXd omega;
  double delta;
  double dilation = 1.0;       // M >= 1
  Eigen::VectorXd shift;       // size d+1, (x, t)
};

bool tube_contains(const Tube& tube, const Eigen::VectorXd& p);

/// Exact separation predicate for two translates of the same dilated tube.
bool tubes_disjoint(const Eigen::VectorXd& omega, double delta, double dilation,
                    const Eigen::VectorXd& shift_a, const Eigen::VectorXd& shift_b);

/// Exact containment of a Euclidean ball in a (dilated, shifted) tube.
/// Each face is an affine slab; the ball fits iff every slab margin is at
/// least radius times the Euclidean norm of the slab normal.
bool ball_in_tube(const Eigen::VectorXd& omega, double delta, double dilation,
                  const Eigen::VectorXd& tube_shift, const Eigen::VectorXd& center,
                  double radius);

/// delta-separated frequency set: the axis lattice delta Z^d intersected
/// with [-1, 1]^d, one point per column.
struct FrequencyNet {
  double delta;
  int dim;
  Eigen::MatrixXd points;  // dim x count

  long long count() const { return points.cols(); }
};

FrequencyNet build_net(double delta, int dim);

/// Shift lattice for the tuned bush: centers (k_1, ..., k_d) * delta^{-1-eps0}
/// in space paired with time k_1, for integer 0 <= k_1 < delta^-2 and
/// 0 <= k_i < delta^-1 (i >= 2), plus the coherence-ball radius.
struct TunedLattice {
  double delta;
  double eps0;
  Eigen::MatrixXd centers;  // (dim+1) x count, space-time columns
  double ball_radius;
};

inline constexpr double kCoherenceRadius = 1e-10;

TunedLattice build_tuned_lattice(double delta, int dim, double eps0 = 0.5);

}  // namespace declab
