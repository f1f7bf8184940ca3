#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kCli = DECLAB_CLI_PATH;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("declab-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  out.push_back("");  // rows may end in an empty column
  return out;
}

}  // namespace

TEST_CASE("exponent command") {
  TempDir dir;
  const auto out = dir.path / "exp.csv";
  SUBCASE("region corner") {
    REQUIRE(run("exponent --d 2 --q 4 --r 4 --out " + out.string()) == 0);
    const auto rows = lines(slurp(out));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "d,q,r,in_region,lower_bound,sharp,case");
    const auto c = cells(rows[1]);
    CHECK(c[3] == "true");
    CHECK(c[4] == "0");
    CHECK(c[5] == "0");
    CHECK(c[6] == "InRegion");
  }
  SUBCASE("outer point") {
    REQUIRE(run("exponent --d 1 --q 10 --r 10 --out " + out.string()) == 0);
    const auto c = cells(lines(slurp(out))[1]);
    CHECK(c[3] == "false");
    CHECK(std::stod(c[5]) == doctest::Approx(0.2));
  }
  SUBCASE("sharp absent below (2,2)") {
    REQUIRE(run("exponent --d 1 --q 1 --r 2 --out " + out.string()) == 0);
    const auto c = cells(lines(slurp(out))[1]);
    CHECK(std::stod(c[4]) == doctest::Approx(0.5));
    CHECK(c[5].empty());
  }
  SUBCASE("json mirror") {
    REQUIRE(run("exponent --d 1 --q inf --r 2 --format json --out " + out.string()) == 0);
    const auto text = slurp(out);
    CHECK(text.find("\"in_region\": true") != std::string::npos);
    CHECK(text.find("\"sharp\": 0.0") != std::string::npos);
  }
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("exponent --d 1 --q 0.5 --r 2") == 2);  // exponent below 1
  CHECK(run("exponent --bogus") == 2);
  CHECK(run("nonsense") == 2);
  CHECK(run("lowerbound --family bogus") == 2);
  CHECK(run("expsum --N 8,16 --coeffs bogus") == 2);
}

TEST_CASE("budget refusal exits with 3") {
  CHECK(run("lowerbound --family bush --d 1 --q 2 --r 2 --deltas 1/8 --budget 1000") == 3);
}

TEST_CASE("lowerbound command emits samples and fit") {
  TempDir dir;
  const auto out = dir.path / "lb.csv";
  REQUIRE(run("lowerbound --family bush --d 1 --q 2 --r 2 --deltas 1/4,1/8 --out " +
              out.string()) == 0);
  const auto rows = lines(slurp(out));
  REQUIRE(rows.size() == 4);  // header, two samples, fit
  CHECK(rows[0] ==
        "kind,family,d,q,r,delta,numerator,denominator,ratio,slope,intercept,max_residual,"
        "predicted");
  const auto s0 = cells(rows[1]);
  CHECK(s0[0] == "sample");
  CHECK(s0[1] == "bush");
  CHECK(std::stod(s0[5]) == 0.25);
  CHECK(std::stod(s0[8]) > 0.0);
  const auto fit = cells(rows[3]);
  CHECK(fit[0] == "fit");
  // predicted bush exponent at (2,2) is its term d/2 - d/r - 2/q = -1
  CHECK(std::stod(fit[12]) == doctest::Approx(-1.0));

  SUBCASE("single delta emits no fit row") {
    const auto single = dir.path / "single.csv";
    REQUIRE(run("lowerbound --family bush --d 1 --q 2 --r 2 --deltas 1/4 --out " +
                single.string()) == 0);
    CHECK(lines(slurp(single)).size() == 2);
  }
}

TEST_CASE("expsum parseval ladder and determinism across workers") {
  TempDir dir;
  const auto a = dir.path / "a.csv";
  const auto b = dir.path / "b.csv";
  const std::string base = "expsum --d 1 --q 2 --r 2 --N 4,8,16 --coeffs random --seed 9 ";
  REQUIRE(run(base + "--workers 1 --out " + a.string()) == 0);
  REQUIRE(run(base + "--workers 2 --out " + b.string()) == 0);
  const auto ta = slurp(a);
  CHECK(ta == slurp(b));
  const auto rows = lines(ta);
  REQUIRE(rows.size() == 5);
  for (int i = 1; i <= 3; ++i) {
    CHECK(std::stod(cells(rows[i])[6]) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(cells(rows[4])[0] == "fit");
}

TEST_CASE("selftest command") {
  CHECK(run("selftest --suite exponents") == 0);
  CHECK(run("selftest --suite bogus") == 2);
  // an absurd tail cutoff starves the packet quadrature and must fail the suite
  CHECK(run("selftest --suite families --tail-cutoff 1") == 1);
}

TEST_CASE("config file provides defaults and flags override") {
  TempDir dir;
  const auto cfg = dir.path / "run.cfg";
  {
    std::ofstream f(cfg);
    f << "d=1\nq=10\nr=10\n";
  }
  const auto out = dir.path / "out.csv";
  REQUIRE(run("exponent --config " + cfg.string() + " --out " + out.string()) == 0);
  CHECK(std::stod(cells(lines(slurp(out))[1])[5]) == doctest::Approx(0.2));
  REQUIRE(run("exponent --config " + cfg.string() + " --q 2 --r 2 --out " + out.string()) == 0);
  CHECK(cells(lines(slurp(out))[1])[3] == "true");
}
