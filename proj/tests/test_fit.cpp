#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "declab/families.hpp"
#include "declab/fit.hpp"

using namespace declab;

namespace {

DecouplingSample sample(double delta, double ratio) {
  DecouplingSample s;
  s.delta = delta;
  s.ratio = ratio;
  return s;
}

}  // namespace

TEST_CASE("doubling ratios give slope one") {
  const std::vector<DecouplingSample> samples = {sample(0.25, 2.0), sample(0.125, 4.0),
                                                 sample(0.0625, 8.0)};
  const auto fit = fit_exponent(samples);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.max_residual < 1e-12);
  CHECK(fit.points.size() == 3);
}

TEST_CASE("constant ratios give slope zero") {
  const std::vector<DecouplingSample> samples = {sample(0.5, 1.7), sample(0.25, 1.7),
                                                 sample(0.125, 1.7)};
  CHECK(fit_exponent(samples).slope == 0.0);
}

TEST_CASE("degenerate inputs rejected") {
  CHECK_THROWS_AS(fit_exponent(std::vector<DecouplingSample>{sample(0.25, 1.0)}),
                  std::invalid_argument);
  const std::vector<std::array<double, 2>> same_x = {{1.0, 2.0}, {1.0, 3.0}};
  CHECK_THROWS_AS(fit_line(same_x), std::invalid_argument);
}

TEST_CASE("least squares on noisy points") {
  // residual-minimizing line for a known small system
  const std::vector<std::array<double, 2>> pts = {{0.0, 0.0}, {1.0, 1.1}, {2.0, 1.9}};
  const auto fit = fit_line(pts);
  CHECK(fit.slope == doctest::Approx(0.95));
  CHECK(fit.intercept == doctest::Approx(0.05));
  CHECK(fit.max_residual == doctest::Approx(0.1).epsilon(1e-9));
}
