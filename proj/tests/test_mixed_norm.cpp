#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "declab/mixed_norm.hpp"
#include "declab/selftest.hpp"

using namespace declab;

TEST_CASE("exponent type") {
  CHECK(exponent(2).reciprocal() == 0.5);
  CHECK(Exponent::inf().reciprocal() == 0.0);
  CHECK_THROWS_AS(exponent(0.5), std::invalid_argument);
  CHECK_THROWS_AS(exponent(0.0), std::invalid_argument);
  CHECK(parse_exponent("inf").infinite);
  CHECK(parse_exponent("10/3").value == doctest::Approx(10.0 / 3.0));
  CHECK(parse_rational("1/8") == 0.125);
  CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("separable indicator") {
  GridSpec g = GridSpec::euclidean(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1), 0.0, 2.0,
                                   0.125, 0.125);
  SampledField f = SampledField::zero(g);
  for (auto& s : f.slices) s.setOnes();
  // |B_x|^{1/2} |B_t|^{1/4}
  CHECK(mixed_norm(f, exponent(4), exponent(2)) == doctest::Approx(std::pow(2.0, 0.25)));
  SUBCASE("sup norms of the constant field") {
    CHECK(mixed_norm(f, Exponent::inf(), Exponent::inf()) == 1.0);
  }
  SUBCASE("zero iff all samples zero") {
    CHECK(mixed_norm(f, exponent(2), exponent(2)) > 0.0);
    for (auto& s : f.slices) s.setZero();
    CHECK(mixed_norm(f, exponent(2), exponent(2)) == 0.0);
  }
}

TEST_CASE("gaussian oracle") { CHECK(checks::mixed_norm_gaussian_oracle().ok); }

TEST_CASE("box oracle") { CHECK(checks::mixed_norm_box_oracle().ok); }

TEST_CASE("l2 aggregation") {
  CHECK(l2_aggregate(std::vector<double>{3.0, 4.0}) == 5.0);
  CHECK(l2_aggregate(std::vector<double>{1.25}) == 1.25);
  CHECK(l2_aggregate(std::vector<double>{1.0, 1.0, 1.0, 1.0}) == 2.0);
  CHECK(l2_aggregate(std::vector<double>{}) == 0.0);
}

TEST_CASE("homogeneity pairs") {
  GridSpec g = GridSpec::euclidean(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1), 0.0, 1.0,
                                   0.25, 0.25);
  SampledField f = SampledField::zero(g);
  for (long long j = 0; j < g.n_t; ++j) {
    for (long long i = 0; i < g.cells(0); ++i) {
      f.slices[j](i) = std::complex<double>(0.3 * i - j, 0.7 * j + i);
    }
  }
  SUBCASE("zero scalar") {
    const auto [a, b] = homogeneity_check(f, exponent(2), exponent(2), 0.0);
    CHECK(a == 0.0);
    CHECK(b == 0.0);
  }
  SUBCASE("positive scalar") {
    const auto [a, b] = homogeneity_check(f, exponent(4), exponent(2), 2.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
  SUBCASE("imaginary unit") {
    const auto [a, b] = homogeneity_check(f, exponent(3), Exponent::inf(),
                                          std::complex<double>(0.0, 1.0));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("pairwise reduction basics") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + static_cast<double>(i));
  double seq = 0.0;
  for (double x : v) seq += x;
  CHECK(pairwise_sum(v) == doctest::Approx(seq).epsilon(1e-14));
}

TEST_CASE("invariant suite") {
  SelftestConfig cfg;
  for (const auto& suite : run_selftests(cfg, "mixed_norm")) {
    for (const auto& c : suite.checks) {
      INFO(c.name, ": ", c.detail);
      CHECK(c.ok);
    }
  }
}
