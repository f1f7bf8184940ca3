#include "declab/grid.hpp"

#include <cmath>

namespace declab {

GridSpec GridSpec::euclidean(Eigen::VectorXd x_min, Eigen::VectorXd x_max, double t_min,
                             double t_max, double h_x, double h_t) {
  if (x_min.size() != x_max.size()) throw std::invalid_argument("axis bound size mismatch");
  if (!(h_x > 0.0 && h_t > 0.0)) throw std::invalid_argument("spacings must be positive");
  if (!(t_max > t_min)) throw std::invalid_argument("time extent must be positive");
  GridSpec g;
  g.x_min = std::move(x_min);
  g.x_max = std::move(x_max);
  g.t_min = t_min;
  g.t_max = t_max;
  g.h_x = h_x;
  g.h_t = h_t;
  g.periodic = false;
  const int d = g.dim();
  g.cells.resize(d);
  for (int i = 0; i < d; ++i) {
    const double extent = g.x_max(i) - g.x_min(i);
    if (!(extent > 0.0)) throw std::invalid_argument("spatial extent must be positive");
    g.cells(i) = std::llround(extent / h_x);
    if (g.cells(i) < 1) g.cells(i) = 1;
  }
  g.n_t = std::llround((t_max - t_min) / h_t);
  if (g.n_t < 1) g.n_t = 1;
  return g;
}

GridSpec GridSpec::torus(int dim, long long samples_per_axis, long long time_slices) {
  if (dim < 1 || samples_per_axis < 1 || time_slices < 1) {
    throw std::invalid_argument("torus grid sizes must be positive");
  }
  GridSpec g;
  g.x_min = Eigen::VectorXd::Zero(dim);
  g.x_max = Eigen::VectorXd::Ones(dim);
  g.t_min = 0.0;
  g.t_max = 1.0;
  g.h_x = 1.0 / samples_per_axis;
  g.h_t = 1.0 / time_slices;
  g.periodic = true;
  g.cells = Eigen::Vector<long long, Eigen::Dynamic>::Constant(dim, samples_per_axis);
  g.n_t = time_slices;
  return g;
}

SampledField SampledField::zero(const GridSpec& grid) {
  SampledField f;
  f.grid = grid;
  f.slices.assign(grid.n_t, Eigen::ArrayXcd::Zero(grid.spatial_count()));
  return f;
}

}  // namespace declab
