#pragma once

#include <array>
#include <span>
#include <vector>

namespace declab {

/// Least-squares line through (x, y) points.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  std::vector<std::array<double, 2>> points;
};

/// Ordinary least squares; throws for fewer than 2 points or degenerate x.
FitResult fit_line(std::span<const std::array<double, 2>> pts);

}  // namespace declab
