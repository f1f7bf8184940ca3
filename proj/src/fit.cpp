#include "declab/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace declab {

FitResult fit_line(std::span<const std::array<double, 2>> pts) {
  const std::size_t n = pts.size();
  if (n < 2) throw std::invalid_argument("fit needs at least 2 points");
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    mx += p[0];
    my += p[1];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    sxx += (p[0] - mx) * (p[0] - mx);
    sxy += (p[0] - mx) * (p[1] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit needs distinct abscissae");
  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  r.points.assign(pts.begin(), pts.end());
  for (const auto& p : pts) {
    r.max_residual = std::max(r.max_residual, std::abs(p[1] - (r.intercept + r.slope * p[0])));
  }
  return r;
}

}  // namespace declab
