#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "declab/families.hpp"
#include "declab/selftest.hpp"

using namespace declab;

namespace {

FamilyParams params_for(double delta, double sep = 4.0) {
  FamilyParams p;
  p.delta = delta;
  p.dim = 1;
  p.sep_exponent = sep;
  return p;
}

}  // namespace

TEST_CASE("family construction") {
  SUBCASE("bush") {
    const auto spec = build_family(FamilyKind::Bush, params_for(0.5));
    REQUIRE(spec.groups.size() == 5);
    CHECK(spec.packet_count() == 5);
    for (const auto& g : spec.groups) {
      REQUIRE(g.size() == 1);
      CHECK(g[0].shift.norm() == 0.0);
    }
  }
  SUBCASE("tuned bush carries every lattice center") {
    const auto spec = build_family(FamilyKind::TunedBush, params_for(0.5));
    REQUIRE(spec.groups.size() == 5);
    CHECK(spec.packet_count() == 20);  // 5 frequencies x ceil(delta^-2) centers
  }
  SUBCASE("time shifts step by the separation power") {
    const auto spec = build_family(FamilyKind::TimeSeparated, params_for(0.5, 4.0));
    REQUIRE(spec.groups.size() == 5);
    for (std::size_t i = 0; i < spec.groups.size(); ++i) {
      CHECK(spec.groups[i][0].shift(1) == doctest::Approx(16.0 * static_cast<double>(i)));
      CHECK(spec.groups[i][0].shift(0) == 0.0);
    }
  }
  SUBCASE("space shifts land on the first axis") {
    const auto spec = build_family(FamilyKind::SpaceSeparated, params_for(0.5, 3.0));
    for (std::size_t i = 0; i < spec.groups.size(); ++i) {
      CHECK(spec.groups[i][0].shift(0) == doctest::Approx(8.0 * static_cast<double>(i)));
      CHECK(spec.groups[i][0].shift(1) == 0.0);
    }
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(build_family(FamilyKind::Bush, params_for(1.0)), std::invalid_argument);
    CHECK_THROWS_AS(build_family(FamilyKind::Bush, params_for(0.25, 2.0)),
                    std::invalid_argument);
    FamilyParams bad = params_for(0.25);
    bad.eps0 = 1.0;
    CHECK_THROWS_AS(build_family(FamilyKind::TunedBush, bad), std::invalid_argument);
  }
}

TEST_CASE("auto grid") {
  SynthesisOptions opts;
  SUBCASE("bush extents from the tube geometry") {
    const auto spec = build_family(FamilyKind::Bush, params_for(0.25));
    const auto grid = auto_grid(spec, opts);
    CHECK(grid.t_max == doctest::Approx(64.0));   // trunc / (2 d delta^2)
    CHECK(grid.t_min == doctest::Approx(-64.0));
    CHECK(grid.x_max(0) == doctest::Approx(160.0));  // trunc/delta + 2 * t half-width
    CHECK(grid.x_min(0) == doctest::Approx(-160.0));
  }
  SUBCASE("single packet grid centers on its shift") {
    FamilySpec spec;
    spec.kind = FamilyKind::Bush;
    spec.params = params_for(0.25);
    WavepacketSpec wp{Eigen::VectorXd::Zero(1), 0.25, Eigen::VectorXd::Zero(2),
                      spec.params.envelope};
    wp.shift << 37.0, -11.0;
    spec.groups.push_back({wp});
    const auto grid = auto_grid(spec, opts);
    CHECK(std::abs(0.5 * (grid.x_min(0) + grid.x_max(0)) - 37.0) <= opts.h_x);
    CHECK(std::abs(0.5 * (grid.t_min + grid.t_max) + 11.0) <= opts.h_t);
  }
  SUBCASE("doubling trunc never shrinks extents") {
    const auto spec = build_family(FamilyKind::SpaceSeparated, params_for(0.25, 3.0));
    const auto g1 = auto_grid(spec, opts);
    SynthesisOptions wide = opts;
    wide.trunc = 16.0;
    const auto g2 = auto_grid(spec, wide);
    CHECK(g2.t_max - g2.t_min >= g1.t_max - g1.t_min);
    CHECK(g2.x_max(0) - g2.x_min(0) >= g1.x_max(0) - g1.x_min(0));
  }
  SUBCASE("budget refusal") {
    SynthesisOptions tiny = opts;
    tiny.sample_budget = 1000;
    const auto spec = build_family(FamilyKind::Bush, params_for(0.25));
    CHECK_THROWS_AS(auto_grid(spec, tiny), BudgetError);
  }
}

TEST_CASE("synthesis") {
  SynthesisOptions opts;
  SUBCASE("empty spec gives the zero field") {
    FamilySpec spec;
    spec.kind = FamilyKind::Bush;
    spec.params = params_for(0.25);
    GridSpec grid = GridSpec::euclidean(Eigen::VectorXd::Constant(1, -1.0),
                                        Eigen::VectorXd::Ones(1), -1.0, 1.0, 0.125, 0.125);
    const auto field = synthesize_field(spec, grid, opts);
    for (const auto& s : field.slices) CHECK(s.abs().maxCoeff() == 0.0);
  }
  SUBCASE("single zero-frequency packet is real and positive near the origin") {
    FamilySpec spec;
    spec.kind = FamilyKind::Bush;
    spec.params = params_for(0.25);
    spec.groups.push_back({WavepacketSpec{Eigen::VectorXd::Zero(1), 0.25,
                                          Eigen::VectorXd::Zero(2), spec.params.envelope}});
    const auto grid = auto_grid(spec, opts);
    const auto field = synthesize_field(spec, grid, opts);
    const long long j = grid.n_t / 2;
    const long long i = grid.cells(0) / 2;
    CHECK(field.slices[j](i).real() > 1.0);
    CHECK(field.slices[j](i).imag() == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("bush interference near the origin") {
    const auto spec = build_family(FamilyKind::Bush, params_for(0.25));
    REQUIRE(spec.packet_count() == 9);
    const auto grid = auto_grid(spec, opts);
    const auto field = synthesize_field(spec, grid, opts);
    const long long j = grid.n_t / 2;
    double peak = 0.0;
    for (long long i = grid.cells(0) / 2 - 2; i <= grid.cells(0) / 2 + 2; ++i) {
      peak = std::max(peak, std::abs(field.slices[j](i)));
    }
    CHECK(peak >= 0.5 * 9.0);
  }
  SUBCASE("windowed synthesis matches direct evaluation") {
    const auto spec = build_family(FamilyKind::Bush, params_for(0.25));
    SynthesisOptions small = opts;
    small.trunc = 2.0;
    const auto grid = auto_grid(spec, small);
    const auto field = synthesize_field(spec, grid, small);
    double worst = 0.0;
    for (long long j = 0; j < grid.n_t; j += 7) {
      const double t = grid.t_coord(j);
      for (long long i = 0; i < grid.cells(0); i += 5) {
        Eigen::VectorXd p(2);
        p << grid.x_coord(0, i), t;
        std::complex<double> direct = 0.0;
        for (const auto& g : spec.groups) {
          for (const auto& wp : g) {
            if (envelope_value(wp, p) > small.tail_cutoff) direct += wavepacket_value(wp, p);
          }
        }
        worst = std::max(worst, std::abs(direct - field.slices[j](i)));
      }
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("decoupling ratios") {
  SynthesisOptions opts;
  SUBCASE("one group pins the ratio at 1") {
    FamilySpec spec;
    spec.kind = FamilyKind::Bush;
    spec.params = params_for(0.25);
    spec.groups.push_back({WavepacketSpec{Eigen::VectorXd::Zero(1), 0.25,
                                          Eigen::VectorXd::Zero(2), spec.params.envelope}});
    // library entry point builds full families; replicate its path via a
    // single-frequency bush at a net with one point: use the spec directly
    const auto grid = auto_grid(spec, opts);
    const auto field = synthesize_field(spec, grid, opts);
    const double n = mixed_norm(field, exponent(2), exponent(2));
    CHECK(n / l2_aggregate(std::vector<double>{n}) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("bush near-orthogonality at (2,2)") {
    const auto s = decoupling_ratio(FamilyKind::Bush, params_for(0.125), exponent(2),
                                    exponent(2), opts);
    CHECK(s.denominator > 0.0);
    CHECK(s.ratio == doctest::Approx(s.numerator / s.denominator));
    CHECK(s.ratio >= 0.3);
    CHECK(s.ratio <= 3.0);
  }
  SUBCASE("bush growth at (10,10)") {
    const auto a = decoupling_ratio(FamilyKind::Bush, params_for(0.125), exponent(10),
                                    exponent(10), opts);
    const auto b = decoupling_ratio(FamilyKind::Bush, params_for(0.0625), exponent(10),
                                    exponent(10), opts);
    CHECK(b.ratio / a.ratio >= std::pow(2.0, 0.1));  // predicted power 0.2, with slack
  }
}

TEST_CASE("two spatial dimensions") {
  FamilyParams params;
  params.delta = 0.5;
  params.dim = 2;
  SynthesisOptions opts;
  opts.h_x = 0.25;
  opts.h_t = 0.25;
  opts.trunc = 4.0;
  SUBCASE("windowed synthesis matches direct evaluation") {
    const auto spec = build_family(FamilyKind::Bush, params);
    REQUIRE(spec.packet_count() == 25);
    const auto grid = auto_grid(spec, opts);
    const auto field = synthesize_field(spec, grid, opts);
    double worst = 0.0;
    for (long long j = 0; j < grid.n_t; j += 3) {
      const double t = grid.t_coord(j);
      for (long long flat = (j * 131) % 64; flat < grid.spatial_count(); flat += 97) {
        Eigen::VectorXd p(3);
        p(0) = grid.x_coord(0, flat / grid.cells(1));
        p(1) = grid.x_coord(1, flat % grid.cells(1));
        p(2) = t;
        std::complex<double> direct = 0.0;
        for (const auto& g : spec.groups) {
          for (const auto& wp : g) {
            if (envelope_value(wp, p) > opts.tail_cutoff) direct += wavepacket_value(wp, p);
          }
        }
        worst = std::max(worst, std::abs(direct - field.slices[j](flat)));
      }
    }
    CHECK(worst < 1e-9);
  }
  SUBCASE("near-orthogonal ratio at (2,2)") {
    const auto s = decoupling_ratio(FamilyKind::Bush, params, exponent(2), exponent(2), opts);
    CHECK(s.ratio >= 0.3);
    CHECK(s.ratio <= 3.0);
  }
}

TEST_CASE("family exponent routing") {
  const ExponentTriple t{exponent(2), exponent(10), 1};
  CHECK(family_exponent(FamilyKind::TunedBush, t) == doctest::Approx(0.2));
  CHECK(family_exponent(FamilyKind::Bush, t) == doctest::Approx(-0.6));
  const ExponentTriple space{exponent(2), exponent(1), 1};
  CHECK(family_exponent(FamilyKind::SpaceSeparated, space) == doctest::Approx(0.5));
  const ExponentTriple time{exponent(1), exponent(2), 1};
  CHECK(family_exponent(FamilyKind::TimeSeparated, time) == doctest::Approx(0.5));
}

TEST_CASE("invariant suite") {
  SelftestConfig cfg;
  for (const auto& suite : run_selftests(cfg, "families")) {
    for (const auto& c : suite.checks) {
      INFO(c.name, ": ", c.detail);
      CHECK(c.ok);
    }
  }
}
