// kato_bounds: command-line driver for the upper and lower bounds, the
// summary table, the property suites and the Taylor coefficient dump.
//
// Exit codes: 0 success, 1 bad flags or input, 2 the large-|k| bound
// dominates the enumerated region, 3 a verify suite failed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kato/kernel.hpp"
#include "kato/pipeline.hpp"
#include "kato/verify.hpp"

namespace {

using kato::pipeline::Json;

enum Exit { kOk = 0, kBadInput = 1, kTailDominates = 2, kVerifyFailed = 3 };

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct UpperArgs {
  int d = 3;
  double n = 3.0;
  std::optional<double> rho;
  std::optional<int> t;
  unsigned threads = 0;
  bool accept_tail_sup = false;
  std::string gamma_csv;
  std::string output;
};

struct LowerArgs {
  double n = 3.0;
  bool seed_paper = false;
  std::string params;
  int restarts = 20;
  std::uint64_t seed = 1;
  bool trace = false;
  unsigned threads = 0;
  std::string output;
};

struct TableArgs {
  std::vector<double> ns{3.0, 4.0, 5.0, 10.0};
  bool quick = false;
  int restarts = 20;
  unsigned threads = 0;
  std::string json;
};

struct VerifyArgs {
  std::string suite = "all";
  std::size_t samples = 1000;
  std::uint64_t seed = 7;
  unsigned threads = 0;
  std::string output;
};

struct TaylorArgs {
  double n = 3.0;
  int count = 8;
  std::string output;
};

int run_upper(const UpperArgs& a) {
  auto config = kato::gfunction::CutoffConfig::defaults_for(a.n, a.d);
  if (a.rho) config.rho = *a.rho;
  if (a.t) config.t = *a.t;
  config.validate();
  kato::gfunction::SupSearchOptions so;
  so.threads = a.threads;
  so.keep_values = !a.gamma_csv.empty();
  so.accept_tail_sup = a.accept_tail_sup;
  try {
    const auto report = kato::pipeline::compute_upper(config, so);
    if (!a.gamma_csv.empty()) emit(kato::pipeline::gamma_csv(report), a.gamma_csv);
    emit(dump(kato::pipeline::to_json(report)), a.output);
  } catch (const kato::gfunction::TailDominatesError& e) {
    Json j{{"command", "upper"},
           {"error", "tail_dominates"},
           {"tail_sup", e.tail_sup},
           {"interior_max", e.interior_max},
           {"message", e.what()}};
    std::cerr << dump(j);
    return kTailDominates;
  }
  return kOk;
}

int run_lower(const LowerArgs& a) {
  std::vector<kato::lowerbound::TrialParams> seeds;
  if (a.seed_paper) seeds.push_back(kato::lowerbound::known_optimum_params(a.n));
  if (!a.params.empty()) {
    std::ifstream f(a.params);
    if (!f) throw std::invalid_argument("cannot read " + a.params);
    const auto j = nlohmann::json::parse(f);
    if (j.is_array()) {
      for (const auto& e : j) seeds.push_back(kato::lowerbound::params_from_json(e));
    } else {
      seeds.push_back(kato::lowerbound::params_from_json(j));
    }
  }
  if (seeds.empty()) {
    kato::lowerbound::TrialParams p;
    p.X[0] = 1.0;
    p.Y[1] = 0.5;
    p.Y[2] = -0.5;
    seeds.push_back(p);
  }
  kato::lowerbound::LowerOptions lo;
  lo.restarts = a.restarts;
  lo.seed = a.seed;
  lo.threads = a.threads;
  if (a.trace) {
    lo.trace = [](const std::string& phase, int it, double value) {
      std::fprintf(stderr, "%s %d %.17g\n", phase.c_str(), it, value);
    };
  }
  const auto report = kato::pipeline::compute_lower(a.n, seeds, lo);
  for (const auto& w : report.result.warnings) std::cerr << "warning: " << w << '\n';
  emit(dump(kato::pipeline::to_json(report)), a.output);
  return kOk;
}

int run_table(const TableArgs& a) {
  kato::pipeline::TableOptions o;
  o.ns = a.ns;
  o.quick = a.quick;
  o.restarts = a.restarts;
  o.threads = a.threads;
  try {
    const auto rows = kato::pipeline::compute_table(o);
    std::cout << kato::pipeline::table_text(rows);
    if (!a.json.empty()) emit(dump(kato::pipeline::to_json(rows)), a.json);
  } catch (const kato::gfunction::TailDominatesError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kTailDominates;
  }
  return kOk;
}

int run_verify(const VerifyArgs& a) {
  kato::verify::VerifyOptions o;
  o.suite = a.suite;
  o.samples = a.samples;
  o.seed = a.seed;
  o.threads = a.threads;
  const auto report = kato::verify::run(o);
  Json j;
  j["command"] = "verify";
  j["build_id"] = kato::pipeline::build_id();
  j["suite"] = a.suite;
  j["samples"] = a.samples;
  j["seed"] = a.seed;
  const Json detail = kato::verify::to_json(report);
  for (const auto& [k, v] : detail.items()) j[k] = v;
  emit(dump(j), a.output);
  return report.passed() ? kOk : kVerifyFailed;
}

int run_taylor(const TaylorArgs& a) {
  emit(kato::kernel::taylor_csv(a.n, a.count), a.output);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper and lower bounds for the sharp Kato constant on the torus"};
  app.require_subcommand(1);

  UpperArgs ua;
  auto* upper = app.add_subcommand("upper", "certified upper bound G+ from the lattice supremum");
  upper->add_option("--d", ua.d, "dimension")->check(CLI::PositiveNumber);
  upper->add_option("--n", ua.n, "Sobolev order");
  upper->add_option("--rho", ua.rho, "cutoff radius (default 20 for n=3, else 10)");
  upper->add_option("--t", ua.t, "even expansion order (default 8 for n=3, else 6)");
  upper->add_option("--threads", ua.threads, "worker threads (0 = all)");
  upper->add_flag("--accept-tail-sup", ua.accept_tail_sup,
                  "use max(sup Gamma, large-|k| bound) + delta when the bound reaches sup Gamma");
  upper->add_option("--gamma-csv", ua.gamma_csv, "write k,Gamma(k) over the enumerated region");
  upper->add_option("--output", ua.output, "JSON report path (default stdout)");

  LowerArgs la;
  auto* lower = app.add_subcommand("lower", "optimized lower bound G- from planar trial families");
  lower->add_option("--n", la.n, "Sobolev order");
  lower->add_flag("--seed-paper", la.seed_paper, "seed with the published optimum parameters");
  lower->add_option("--params", la.params, "JSON file with one parameter set or an array of them")
      ->check(CLI::ExistingFile);
  lower->add_option("--restarts", la.restarts, "perturbed restarts (0 = evaluate seeds only)")
      ->check(CLI::NonNegativeNumber);
  lower->add_option("--seed", la.seed, "random seed for restarts");
  lower->add_flag("--trace", la.trace, "print optimizer progress to stderr");
  lower->add_option("--threads", la.threads, "worker threads (0 = all)");
  lower->add_option("--output", la.output, "JSON report path (default stdout)");

  TableArgs ta;
  auto* table = app.add_subcommand("table", "G-, G+ and their ratio for n = 3, 4, 5, 10");
  table->add_option("--n", ta.ns, "rows to compute (default 3 4 5 10)");
  table->add_flag("--quick", ta.quick, "rho = 6, t = 4 for every n");
  table->add_option("--restarts", ta.restarts, "lower-bound restarts")->check(CLI::NonNegativeNumber);
  table->add_option("--threads", ta.threads, "worker threads (0 = all)");
  table->add_option("--json", ta.json, "also write the full-precision rows as JSON");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "seeded property suites");
  verify->add_option("--suite", va.suite, "identities, inequalities, kato or all")
      ->check(CLI::IsMember({"identities", "inequalities", "kato", "all"}));
  verify->add_option("--samples", va.samples, "samples per property")->check(CLI::PositiveNumber);
  verify->add_option("--seed", va.seed, "random seed");
  verify->add_option("--threads", va.threads, "worker threads (0 = all)");
  verify->add_option("--output", va.output, "JSON report path (default stdout)");

  TaylorArgs xa;
  auto* taylor = app.add_subcommand("dump-taylor", "Taylor coefficients of D_n and E_n as CSV");
  taylor->add_option("--n", xa.n, "Sobolev order");
  taylor->add_option("--count", xa.count, "number of orders")->check(CLI::PositiveNumber);
  taylor->add_option("--output", xa.output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*upper) return run_upper(ua);
    if (*lower) return run_lower(la);
    if (*table) return run_table(ta);
    if (*verify) return run_verify(va);
    if (*taylor) return run_taylor(xa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}
