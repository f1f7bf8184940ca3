// declab: measure mixed-norm decoupling ratios for paraboloid wavepacket
// families, torus exponential-sum growth, and the closed-form exponents they
// are checked against.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "declab/expsum.hpp"
#include "declab/families.hpp"
#include "declab/io.hpp"
#include "declab/selftest.hpp"

namespace {

using declab::Exponent;
using declab::format_double;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct OutputTarget {
  std::string path = "-";

  void write(const std::string& text) const {
    if (path == "-" || path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
  }
};

std::vector<double> parse_ladder(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(declab::parse_rational(item));
  }
  if (out.empty()) throw std::invalid_argument("empty ladder");
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < out.size(); ++i) {
    inc = inc && out[i] > out[i - 1];
    dec = dec && out[i] < out[i - 1];
  }
  if (out.size() > 1 && !inc && !dec) {
    throw std::invalid_argument("ladder must be strictly monotone");
  }
  return out;
}

std::vector<int> parse_int_ladder(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_ladder(csv)) {
    const int n = static_cast<int>(std::llround(v));
    if (n < 1 || std::abs(v - n) > 1e-9) throw std::invalid_argument("N must be a positive integer");
    out.push_back(n);
  }
  return out;
}

std::string csv_cell(const std::string& s) { return s; }

struct CommonFlags {
  std::string out = "-";
  std::string format = "csv";
  int workers = 0;
  long long budget = 2'000'000'000;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out, "output path, '-' for stdout");
  cmd->add_option("--format", flags.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", flags.workers, "worker threads, 0 = hardware");
  cmd->add_option("--budget", flags.budget, "grid sample budget");
}

// Expands `--config FILE` into the file's flat key=value pairs, inserted
// right after the subcommand name so that explicit flags take precedence
// (every option takes its last occurrence).
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> tokens(argv + 1, argv + argc);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string file;
    std::size_t span = 0;
    if (tokens[i] == "--config" && i + 1 < tokens.size()) {
      file = tokens[i + 1];
      span = 2;
    } else if (tokens[i].rfind("--config=", 0) == 0) {
      file = tokens[i].substr(9);
      span = 1;
    }
    if (span == 0) continue;
    std::ifstream in(file);
    if (!in) throw CLI::ValidationError("--config", "cannot open config file '" + file + "'");
    std::vector<std::string> injected;
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) continue;
      injected.push_back("--" + key);
      injected.push_back(value);
    }
    tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                 tokens.begin() + static_cast<std::ptrdiff_t>(i + span));
    const auto at = tokens.empty() ? tokens.begin() : tokens.begin() + 1;
    tokens.insert(at, injected.begin(), injected.end());
    break;
  }
  return tokens;
}

// ---- exponent -------------------------------------------------------------

struct ExponentArgs {
  int d = 1;
  std::string q = "2", r = "2";
  CommonFlags common;
};

int run_exponent(const ExponentArgs& args) {
  const declab::ExponentTriple t{declab::parse_exponent(args.q), declab::parse_exponent(args.r),
                                 args.d};
  const auto rep = declab::classify(t);
  std::ostringstream os;
  if (args.common.format == "json") {
    Json j;
    j["d"] = args.d;
    j["q"] = declab::exponent_to_string(t.q);
    j["r"] = declab::exponent_to_string(t.r);
    j["in_region"] = rep.in_region;
    j["lower_bound"] = rep.lower_bound;
    if (rep.sharp) j["sharp"] = *rep.sharp;
    if (rep.branch) j["case"] = declab::region_case_name(*rep.branch);
    os << j.dump(2) << "\n";
  } else {
    os << "d,q,r,in_region,lower_bound,sharp,case\n";
    os << args.d << ',' << declab::exponent_to_string(t.q) << ','
       << declab::exponent_to_string(t.r) << ',' << (rep.in_region ? "true" : "false") << ','
       << format_double(rep.lower_bound) << ',' << (rep.sharp ? format_double(*rep.sharp) : "")
       << ',' << (rep.branch ? declab::region_case_name(*rep.branch) : "") << "\n";
  }
  OutputTarget{args.common.out}.write(os.str());
  return kExitOk;
}

// ---- lowerbound -----------------------------------------------------------

struct LowerboundArgs {
  std::string family = "bush";
  int d = 1;
  std::string q = "2", r = "2";
  std::string deltas = "1/4,1/8";
  int m = 4;
  std::string hx = "1/8";
  std::string ht;  // default 1/(8 d)
  double trunc = 8.0;
  double tail_cutoff = 1e-8;
  double sep_exponent = 4.0;
  CommonFlags common;
};

int run_lowerbound(const LowerboundArgs& args) {
  const auto kind = declab::parse_family(args.family);
  const Exponent q = declab::parse_exponent(args.q);
  const Exponent r = declab::parse_exponent(args.r);

  declab::SynthesisOptions opts;
  opts.h_x = declab::parse_rational(args.hx);
  opts.h_t = args.ht.empty() ? 1.0 / (8.0 * args.d) : declab::parse_rational(args.ht);
  opts.trunc = args.trunc;
  opts.tail_cutoff = args.tail_cutoff;
  opts.sample_budget = args.common.budget;
  opts.workers = args.common.workers;

  std::vector<declab::DecouplingSample> samples;
  for (double delta : parse_ladder(args.deltas)) {
    declab::FamilyParams params;
    params.delta = delta;
    params.dim = args.d;
    params.sep_exponent = args.sep_exponent;
    params.envelope = declab::make_envelope_params(args.m);
    try {
      samples.push_back(declab::decoupling_ratio(kind, params, q, r, opts));
    } catch (const declab::BudgetError& e) {
      std::cerr << "budget refusal at delta = " << format_double(delta) << ": " << e.what()
                << "\n";
      return kExitBudget;
    }
  }
  const double predicted =
      declab::family_exponent(kind, {q, r, args.d});  // recomputed at emission

  std::optional<declab::FitResult> fit;
  if (samples.size() >= 2) fit = declab::fit_exponent(samples);

  std::ostringstream os;
  const std::string qs = declab::exponent_to_string(q), rs = declab::exponent_to_string(r);
  if (args.common.format == "json") {
    Json j;
    j["command"] = "lowerbound";
    j["family"] = args.family;
    j["d"] = args.d;
    j["q"] = qs;
    j["r"] = rs;
    j["samples"] = Json::array();
    for (const auto& s : samples) {
      j["samples"].push_back({{"delta", s.delta},
                              {"numerator", s.numerator},
                              {"denominator", s.denominator},
                              {"ratio", s.ratio}});
    }
    if (fit) {
      j["fit"] = {{"slope", fit->slope},
                  {"intercept", fit->intercept},
                  {"max_residual", fit->max_residual},
                  {"predicted", predicted}};
    }
    os << j.dump(2) << "\n";
  } else {
    os << "kind,family,d,q,r,delta,numerator,denominator,ratio,slope,intercept,max_residual,"
          "predicted\n";
    for (const auto& s : samples) {
      os << "sample," << args.family << ',' << args.d << ',' << qs << ',' << rs << ','
         << format_double(s.delta) << ',' << format_double(s.numerator) << ','
         << format_double(s.denominator) << ',' << format_double(s.ratio) << ",,,,\n";
    }
    if (fit) {
      os << "fit," << args.family << ',' << args.d << ',' << qs << ',' << rs << ",,,,,"
         << format_double(fit->slope) << ',' << format_double(fit->intercept) << ','
         << format_double(fit->max_residual) << ',' << format_double(predicted) << "\n";
    }
  }
  OutputTarget{args.common.out}.write(os.str());
  return kExitOk;
}

// ---- expsum ---------------------------------------------------------------

struct ExpsumArgs {
  int d = 1;
  std::string q = "2", r = "2";
  std::string ladder = "8,16,32,64";
  std::string coeffs = "ones";
  std::uint64_t seed = 0;
  int oversample = 4;
  CommonFlags common;
};

int run_expsum(const ExpsumArgs& args) {
  const auto rule = declab::parse_coeff_rule(args.coeffs);
  const Exponent q = declab::parse_exponent(args.q);
  const Exponent r = declab::parse_exponent(args.r);
  const auto ladder = parse_int_ladder(args.ladder);

  std::vector<declab::GrowthSample> samples;
  std::vector<std::array<double, 2>> pts;
  for (int N : ladder) {
    const auto coeffs = declab::make_coefficients(rule, N, args.d, args.seed);
    samples.push_back(declab::expsum_ratio(coeffs, q, r, args.oversample, args.common.workers));
    pts.push_back({std::log(static_cast<double>(N)), std::log(samples.back().ratio)});
  }
  std::optional<declab::FitResult> fit;
  std::set<int> distinct(ladder.begin(), ladder.end());
  if (distinct.size() >= 3) fit = declab::fit_line(pts);
  const auto proven = declab::discres_bound({q, r, args.d});  // recomputed at emission

  std::ostringstream os;
  const std::string qs = declab::exponent_to_string(q), rs = declab::exponent_to_string(r);
  if (args.common.format == "json") {
    Json j;
    j["command"] = "expsum";
    j["rule"] = args.coeffs;
    j["d"] = args.d;
    j["q"] = qs;
    j["r"] = rs;
    j["samples"] = Json::array();
    for (const auto& s : samples) j["samples"].push_back({{"N", s.N}, {"ratio", s.ratio}});
    if (fit) {
      Json f = {{"slope", fit->slope},
                {"intercept", fit->intercept},
                {"max_residual", fit->max_residual}};
      if (proven) f["proven"] = *proven;
      j["fit"] = f;
    }
    os << j.dump(2) << "\n";
  } else {
    os << "kind,rule,d,q,r,N,ratio,slope,intercept,max_residual,proven\n";
    for (const auto& s : samples) {
      os << "sample," << args.coeffs << ',' << args.d << ',' << qs << ',' << rs << ',' << s.N
         << ',' << format_double(s.ratio) << ",,,,\n";
    }
    if (fit) {
      os << "fit," << args.coeffs << ',' << args.d << ',' << qs << ',' << rs << ",,,"
         << format_double(fit->slope) << ',' << format_double(fit->intercept) << ','
         << format_double(fit->max_residual) << ','
         << (proven ? format_double(*proven) : "") << "\n";
    }
  }
  OutputTarget{args.common.out}.write(os.str());
  return kExitOk;
}

// ---- selftest ---------------------------------------------------------------

struct SelftestArgs {
  std::string suite;
  int m = 4;
  std::string hx = "1/8";
  std::string ht;
  double trunc = 8.0;
  double tail_cutoff = 1e-8;
  double sep_exponent = 4.0;
  int oversample = 4;
  std::uint64_t seed = 0x5eedULL;
  CommonFlags common;
};

int run_selftest_cmd(const SelftestArgs& args) {
  if (!args.suite.empty()) {
    const auto names = declab::selftest_suite_names();
    if (std::find(names.begin(), names.end(), args.suite) == names.end()) {
      std::cerr << "unknown suite '" << args.suite << "'\n";
      return kExitUsage;
    }
  }
  declab::SelftestConfig cfg;
  cfg.m = args.m;
  cfg.synth.h_x = declab::parse_rational(args.hx);
  cfg.synth.h_t = args.ht.empty() ? 0.125 : declab::parse_rational(args.ht);
  cfg.synth.trunc = args.trunc;
  cfg.synth.tail_cutoff = args.tail_cutoff;
  cfg.synth.sample_budget = args.common.budget;
  cfg.synth.workers = args.common.workers;
  cfg.sep_exponent = args.sep_exponent;
  cfg.oversample = args.oversample;
  cfg.seed = args.seed;

  const auto results = declab::run_selftests(cfg, args.suite);
  std::ostringstream os;
  int passed = 0, total = 0;
  for (const auto& suite : results) {
    os << suite.suite << ": " << suite.passed() << "/" << suite.total() << " passed\n";
    for (const auto& c : suite.checks) {
      if (!c.ok) os << "  FAIL " << c.name << ": " << c.detail << "\n";
    }
    passed += suite.passed();
    total += suite.total();
  }
  os << "selftest: " << passed << "/" << total << " passed\n";
  OutputTarget{args.common.out}.write(os.str());
  return passed == total ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for mixed-norm decoupling ratios"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  ExponentArgs exp_args;
  auto* cmd_exp = app.add_subcommand("exponent", "closed-form region and exponent report");
  cmd_exp->add_option("--d", exp_args.d, "spatial dimension")->check(CLI::PositiveNumber);
  cmd_exp->add_option("--q", exp_args.q, "time exponent (number, fraction, or inf)");
  cmd_exp->add_option("--r", exp_args.r, "space exponent");
  add_common(cmd_exp, exp_args.common);

  LowerboundArgs lb_args;
  auto* cmd_lb = app.add_subcommand("lowerbound", "family ratios over a delta ladder");
  cmd_lb->add_option("--family", lb_args.family, "bush, space, time, or tunedbush")
      ->check(CLI::IsMember({"bush", "space", "time", "tunedbush"}));
  cmd_lb->add_option("--d", lb_args.d, "spatial dimension")->check(CLI::PositiveNumber);
  cmd_lb->add_option("--q", lb_args.q, "time exponent");
  cmd_lb->add_option("--r", lb_args.r, "space exponent");
  cmd_lb->add_option("--deltas", lb_args.deltas, "comma-separated delta ladder");
  cmd_lb->add_option("--m", lb_args.m, "envelope decay order")->check(CLI::PositiveNumber);
  cmd_lb->add_option("--hx", lb_args.hx, "spatial grid spacing");
  cmd_lb->add_option("--ht", lb_args.ht, "time grid spacing (default 1/(8 d))");
  cmd_lb->add_option("--trunc", lb_args.trunc, "tube dilate covered by the grid");
  cmd_lb->add_option("--tail-cutoff", lb_args.tail_cutoff, "envelope tail cutoff");
  cmd_lb->add_option("--sep-exponent", lb_args.sep_exponent, "shift spacing exponent");
  add_common(cmd_lb, lb_args.common);

  ExpsumArgs es_args;
  auto* cmd_es = app.add_subcommand("expsum", "torus exponential-sum ratios over an N ladder");
  cmd_es->add_option("--d", es_args.d, "spatial dimension")->check(CLI::PositiveNumber);
  cmd_es->add_option("--q", es_args.q, "time exponent");
  cmd_es->add_option("--r", es_args.r, "space exponent");
  cmd_es->add_option("--N", es_args.ladder, "comma-separated N ladder");
  cmd_es->add_option("--coeffs", es_args.coeffs, "ones, single, or random")
      ->check(CLI::IsMember({"ones", "single", "random"}));
  cmd_es->add_option("--seed", es_args.seed, "seed for random coefficients");
  cmd_es->add_option("--oversample", es_args.oversample, "oversampling factor (>= 4)");
  add_common(cmd_es, es_args.common);

  SelftestArgs st_args;
  auto* cmd_st = app.add_subcommand("selftest", "run the module invariant suites");
  cmd_st->add_option("--suite", st_args.suite, "run a single suite");
  cmd_st->add_option("--m", st_args.m, "envelope decay order")->check(CLI::PositiveNumber);
  cmd_st->add_option("--hx", st_args.hx, "spatial grid spacing");
  cmd_st->add_option("--ht", st_args.ht, "time grid spacing");
  cmd_st->add_option("--trunc", st_args.trunc, "tube dilate covered by the grid");
  cmd_st->add_option("--tail-cutoff", st_args.tail_cutoff, "envelope tail cutoff");
  cmd_st->add_option("--sep-exponent", st_args.sep_exponent, "shift spacing exponent");
  cmd_st->add_option("--oversample", st_args.oversample, "oversampling factor");
  cmd_st->add_option("--seed", st_args.seed, "seed for the randomized checks");
  add_common(cmd_st, st_args.common);

  // handled by expand_config before the parse; registered for --help only
  for (auto* cmd : {cmd_exp, cmd_lb, cmd_es, cmd_st}) {
    cmd->add_option("--config", "flat key=value config file; flags override")->expected(1);
  }

  try {
    auto tokens = expand_config(argc, argv);
    std::reverse(tokens.begin(), tokens.end());  // CLI11 consumes reversed args
    app.parse(tokens);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_exp->parsed()) return run_exponent(exp_args);
    if (cmd_lb->parsed()) return run_lowerbound(lb_args);
    if (cmd_es->parsed()) return run_expsum(es_args);
    if (cmd_st->parsed()) return run_selftest_cmd(st_args);
  } catch (const declab::BudgetError& e) {
    std::cerr << "budget refusal: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
