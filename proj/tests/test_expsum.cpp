#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "declab/expsum.hpp"
#include "declab/selftest.hpp"

using namespace declab;

TEST_CASE("coefficient rules") {
  const auto ones = make_coefficients(CoeffRule::Ones, 4, 2);
  CHECK(ones.a.size() == 16);
  CHECK(ones.l2() == doctest::Approx(4.0));

  const auto single = make_coefficients(CoeffRule::Single, 8, 1);
  CHECK(single.l2() == doctest::Approx(1.0));

  const auto r1 = make_coefficients(CoeffRule::RandomUnimodular, 16, 1, 42);
  const auto r2 = make_coefficients(CoeffRule::RandomUnimodular, 16, 1, 42);
  CHECK((r1.a - r2.a).abs().maxCoeff() == 0.0);  // reproducible from the seed
  for (long long i = 0; i < r1.a.size(); ++i) {
    CHECK(std::abs(r1.a(i)) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(make_coefficients(CoeffRule::Ones, 0, 1), std::invalid_argument);
}

TEST_CASE("single-mode fields have constant modulus") {
  SUBCASE("N = 1") {
    const auto coeffs = make_coefficients(CoeffRule::Ones, 1, 1);
    const auto field = synthesize_expsum(coeffs, expsum_grid(1, 1));
    for (const auto& s : field.slices) {
      CHECK((s.abs() - 1.0).abs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("one nonzero coefficient") {
    const auto coeffs = make_coefficients(CoeffRule::Single, 4, 1);
    const auto field = synthesize_expsum(coeffs, expsum_grid(4, 1));
    for (const auto& s : field.slices) {
      CHECK((s.abs() - 1.0).abs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("direct summation oracle") {
  // trivial value at the space-time origin
  const auto coeffs = make_coefficients(CoeffRule::Ones, 2, 1);
  std::complex<double> direct = 0.0;
  for (int n = 1; n <= 2; ++n) direct += std::complex<double>(1.0, 0.0);  // e(0) terms
  CHECK(direct.real() == 2.0);

  // full synthesizer agreement, d = 1 and d = 2
  CHECK(checks::expsum_matches_direct(4, 5).ok);
}

TEST_CASE("parseval ratios") {
  const auto coeffs = make_coefficients(CoeffRule::RandomUnimodular, 32, 1, 3);
  const auto diag = expsum_ratio(coeffs, exponent(2), exponent(2));
  CHECK(diag.ratio == doctest::Approx(1.0).epsilon(1e-9));
  const auto sup = expsum_ratio(coeffs, Exponent::inf(), exponent(2));
  CHECK(sup.ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("undersampled grids are rejected") {
  const auto coeffs = make_coefficients(CoeffRule::Ones, 8, 1);
  CHECK_THROWS_AS(synthesize_expsum(coeffs, GridSpec::torus(1, 16, 1024)),
                  std::invalid_argument);  // X < 4N
  CHECK_THROWS_AS(synthesize_expsum(coeffs, GridSpec::torus(1, 32, 100)),
                  std::invalid_argument);  // T < 8 d N^2
  CHECK_THROWS_AS(expsum_grid(8, 1, 2), std::invalid_argument);
}

TEST_CASE("growth fit input validation") {
  const std::vector<int> short_ladder = {8, 16};
  CHECK_THROWS_AS(growth_fit(CoeffRule::Ones, short_ladder, 1, exponent(2), exponent(2)),
                  std::invalid_argument);
  const std::vector<int> repeated = {8, 8, 8};
  CHECK_THROWS_AS(growth_fit(CoeffRule::Ones, repeated, 1, exponent(2), exponent(2)),
                  std::invalid_argument);
}

TEST_CASE("flat growth at (2,2)") {
  const std::vector<int> ladder = {4, 8, 16};
  const auto fit = growth_fit(CoeffRule::Ones, ladder, 1, exponent(2), exponent(2));
  CHECK(std::abs(fit.slope) < 1e-6);
}

TEST_CASE("oversampling refinement gate") {
  const auto coeffs = make_coefficients(CoeffRule::Ones, 8, 1);
  const auto coarse = expsum_ratio(coeffs, exponent(10), exponent(10), 4);
  const auto fine = expsum_ratio(coeffs, exponent(10), exponent(10), 8);
  CHECK(std::abs(fine.ratio / coarse.ratio - 1.0) < 1e-3);
}

TEST_CASE("norms dominate the l2 line") {
  const auto coeffs = make_coefficients(CoeffRule::RandomUnimodular, 16, 1, 11);
  for (const auto& [q, r] : std::vector<std::pair<Exponent, Exponent>>{
           {exponent(2), exponent(2)}, {exponent(4), exponent(4)}, {exponent(6), exponent(3)}}) {
    CHECK(expsum_ratio(coeffs, q, r).ratio >= 1.0 - 1e-9);
  }
}
