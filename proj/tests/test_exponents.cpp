#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "declab/exponents.hpp"
#include "declab/selftest.hpp"

using namespace declab;

TEST_CASE("region membership") {
  CHECK(in_region({exponent(6), exponent(6), 1}));
  CHECK(in_region({exponent(4), exponent(4), 2}));
  CHECK_FALSE(in_region({Exponent::inf(), exponent(6), 1}));  // 0 + 1/6 < 1/2
  CHECK_FALSE(in_region({exponent(10), exponent(10), 1}));
  CHECK_FALSE(in_region({exponent(2), exponent(1.5), 1}));  // r < 2
}

TEST_CASE("lower bound exponent") {
  for (int d = 1; d <= 5; ++d) {
    CHECK(lower_bound_exponent({exponent(2), exponent(2), d}) == 0.0);
  }
  CHECK(lower_bound_exponent({Exponent::inf(), Exponent::inf(), 1}) == doctest::Approx(0.5));
  CHECK(lower_bound_exponent({exponent(2), exponent(10), 1}) == doctest::Approx(0.2));
  // q = 1 probes the time-separated term
  CHECK(lower_bound_exponent({exponent(1), exponent(2), 1}) == doctest::Approx(0.5));
}

TEST_CASE("sharp exponent") {
  CHECK(sharp_exponent({exponent(10), exponent(10), 1}) == doctest::Approx(0.2));
  CHECK(sharp_exponent({Exponent::inf(), exponent(2), 1}) == 0.0);
  CHECK(sharp_exponent({exponent(2), exponent(10.0 / 3.0), 3}) == 0.0);
  CHECK_THROWS_AS(sharp_exponent({exponent(1), exponent(2), 1}), std::invalid_argument);
  CHECK_THROWS_AS(sharp_exponent({exponent(4), exponent(1.5), 1}), std::invalid_argument);
}

TEST_CASE("classify") {
  SUBCASE("interior of the region") {
    const auto rep = classify({exponent(4), exponent(4), 2});
    CHECK(rep.in_region);
    CHECK(rep.lower_bound == 0.0);
    CHECK(rep.sharp == 0.0);
    CHECK(rep.branch == RegionCase::InRegion);
  }
  SUBCASE("tuned side") {
    const auto rep = classify({exponent(2), exponent(10), 1});
    CHECK_FALSE(rep.in_region);
    CHECK(rep.branch == RegionCase::QleR);
    CHECK(*rep.sharp == doctest::Approx(0.2));
    CHECK(rep.lower_bound == doctest::Approx(0.2));
  }
  SUBCASE("Strichartz endpoint sits on the region boundary") {
    // (q, r) = (inf, 2) satisfies the region inequalities with equality, so the
    // tie resolves to InRegion; the sharp exponent is 0 either way.
    const auto rep = classify({Exponent::inf(), exponent(2), 1});
    CHECK(rep.in_region);
    CHECK(*rep.sharp == 0.0);
    CHECK(rep.branch == RegionCase::InRegion);
  }
  SUBCASE("sharp omitted below (2, 2)") {
    const auto rep = classify({exponent(1), exponent(2), 1});
    CHECK_FALSE(rep.in_region);
    CHECK_FALSE(rep.sharp.has_value());
    CHECK_FALSE(rep.branch.has_value());
    CHECK(rep.lower_bound == doctest::Approx(0.5));
  }
}

TEST_CASE("diagonal identity is exact") {
  for (double r : {2.0, 3.0, 6.0, 10.0, 100.0 / 7.0}) {
    for (int d = 1; d <= 5; ++d) {
      const auto terms = lower_bound_terms({exponent(r), exponent(r), d});
      CHECK(terms[0] == terms[3]);
    }
  }
}

TEST_CASE("torus growth bound") {
  CHECK(*discres_bound({exponent(6), exponent(6), 1}) == 0.0);
  CHECK(*discres_bound({exponent(2), exponent(10.0 / 3.0), 5}) == doctest::Approx(0.4));
  CHECK_FALSE(discres_bound({exponent(10), exponent(10), 1}).has_value());
  CHECK_FALSE(discres_bound({exponent(2), exponent(10), 1}).has_value());
}

TEST_CASE("figure corners and random sweep") {
  CHECK(checks::exponent_corners().ok);
  CHECK(checks::exponent_sweep(1234, 10000).ok);
}
