#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace declab {

/// Budget refusals carry the offending cell count so drivers can report it.
struct BudgetError : std::runtime_error {
  long long required;
  long long budget;
  BudgetError(long long req, long long bud)
      : std::runtime_error("sample budget exceeded: grid needs " + std::to_string(req) +
                           " cells, budget is " + std::to_string(bud)),
        required(req),
        budget(bud) {}
};

/// Rectangular space-time grid. Euclidean grids use the composite midpoint
/// rule (samples at cell centers); periodic grids are the unit torus per
/// axis with equispaced nodes j / X and midpoint nodes in time.
struct GridSpec {
  Eigen::VectorXd x_min;  // size d
  Eigen::VectorXd x_max;
  double t_min = 0.0;
  double t_max = 1.0;
  double h_x = 0.125;
  double h_t = 0.125;
  bool periodic = false;
  Eigen::Vector<long long, Eigen::Dynamic> cells;  // per-axis cell counts
  long long n_t = 0;

  int dim() const { return static_cast<int>(x_min.size()); }

  long long spatial_count() const {
    long long n = 1;
    for (int i = 0; i < dim(); ++i) n *= cells(i);
    return n;
  }
  long long total_samples() const { return spatial_count() * n_t; }

  double x_coord(int axis, long long i) const {
    return periodic ? i * h_x : x_min(axis) + (i + 0.5) * h_x;
  }
  double t_coord(long long j) const { return t_min + (j + 0.5) * h_t; }

  double cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= h_x;
    return v;
  }

  static GridSpec euclidean(Eigen::VectorXd x_min, Eigen::VectorXd x_max, double t_min,
                            double t_max, double h_x, double h_t);
  static GridSpec torus(int dim, long long samples_per_axis, long long time_slices);
};

/// Complex samples on a grid, one spatial array per time slice. Spatial
/// multi-indices are flattened C-style (last axis fastest).
struct SampledField {
  GridSpec grid;
  std::vector<Eigen::ArrayXcd> slices;

  static SampledField zero(const GridSpec& grid);
};

}  // namespace declab
