#include "kato/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "kato/rounding.hpp"

#ifndef KATO_BUILD_ID
#define KATO_BUILD_ID "unknown"
#endif

namespace kato::pipeline {

std::string build_id() { return KATO_BUILD_ID; }

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json wave_json(const WaveVector& k) {
  Json j = Json::array();
  for (int x : k.components()) j.push_back(x);
  return j;
}

Json extrema_json(const optimize::ExtremaReport& r) {
  return Json{{"min", r.min_value}, {"max", r.max_value}, {"argmin", r.argmin},
              {"argmax", r.argmax}, {"domain", r.domain}};
}

Json config_json(const gfunction::CutoffConfig& c) {
  return Json{{"d", c.d}, {"n", c.n}, {"rho", c.rho}, {"t", c.t}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Upper bound

UpperReport compute_upper(const gfunction::CutoffConfig& config,
                          const gfunction::SupSearchOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  UpperReport r;
  r.config = config;
  r.search = gfunction::sup_search(config, options);
  r.g_plus = gfunction::g_plus_from_bracket(config.d, r.search.bracket.upper);
  r.g_plus_rounded = round_up_sig(r.g_plus, 3);
  r.seconds = seconds_since(t0);
  return r;
}

Json to_json(const UpperReport& r) {
  const auto& s = r.search;
  const auto& b = s.bracket;
  const auto& a = s.asymptotics;
  Json asym = Json::array();
  for (const auto& term : a.terms) {
    asym.push_back(Json{{"l", term.ell},
                        {"P", extrema_json(term.P_range)},
                        {"P_prime", extrema_json(term.P1_range)},
                        {"P_second", extrema_json(term.P2_range)}});
  }
  Json j;
  j["command"] = "upper";
  j["build_id"] = build_id();
  j["config"] = config_json(r.config);
  j["sup_gamma"] = b.sup_gamma;
  j["argmax"] = wave_json(b.argmax);
  j["delta_g"] = b.delta;
  j["bracket"] = Json{{"lower", b.lower}, {"upper", b.upper}, {"tail_limited", b.tail_limited}};
  j["g_plus"] = r.g_plus;
  j["g_plus_rounded"] = format_sig(r.g_plus_rounded, 3);
  j["c_n"] = s.c_n;
  j["remainder_extrema"] = Json{{"lambda", s.remainder.lambda},
                                {"Lambda", s.remainder.Lambda},
                                {"mu", s.remainder.mu},
                                {"M", s.remainder.M}};
  j["tail"] = Json{{"sup", s.tail_sup},
                   {"argsup_kmag", std::isfinite(s.tail_argsup) ? Json(s.tail_argsup)
                                                                 : Json("infinity")},
                   {"W", {a.W, a.W1, a.W2}},
                   {"w", {a.w, a.w1, a.w2}}};
  j["asymptotics"] = asym;
  j["lattice_sizes"] = Json{{"shell", s.shell_size}, {"enumerated_k", s.enumerated}};
  j["timing"] = Json{{"wall_seconds", r.seconds}};
  return j;
}

std::string gamma_csv(const UpperReport& r) {
  std::ostringstream os;
  for (int a = 0; a < r.config.d; ++a) os << 'k' << (a + 1) << ',';
  os << "gamma\n";
  char buf[40];
  for (const auto& [k, v] : r.search.values) {
    for (int x : k.components()) os << x << ',';
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Lower bound

LowerReport compute_lower(double n, const std::vector<lowerbound::TrialParams>& seeds,
                          const lowerbound::LowerOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  LowerReport r;
  r.n = n;
  r.result = lowerbound::optimize_lower(n, seeds, options);
  r.g_minus_rounded = round_down_sig(r.result.value, 3);
  r.seconds = seconds_since(t0);
  return r;
}

Json to_json(const LowerReport& r) {
  Json j;
  j["command"] = "lower";
  j["build_id"] = build_id();
  j["n"] = r.n;
  j["g_minus"] = r.result.value;
  j["g_minus_rounded"] = format_sig(r.g_minus_rounded, 3);
  j["params"] = Json::parse(lowerbound::params_to_json(r.result.params).dump());
  j["warnings"] = r.result.warnings;
  j["timing"] = Json{{"wall_seconds", r.seconds}};
  return j;
}

// ---------------------------------------------------------------------------
// Table

std::vector<TableRow> compute_table(const TableOptions& options) {
  std::vector<TableRow> rows;
  for (double n : options.ns) {
    auto config = gfunction::CutoffConfig::defaults_for(n);
    if (options.quick) {
      config.rho = 6.0;
      config.t = 4;
    }
    gfunction::SupSearchOptions so;
    so.threads = options.threads;
    const auto upper = compute_upper(config, so);

    std::vector<lowerbound::TrialParams> seeds;
    try {
      seeds.push_back(lowerbound::known_optimum_params(n));
    } catch (const std::out_of_range&) {
      seeds.push_back(lowerbound::known_optimum_params(3.0));
    }
    lowerbound::LowerOptions lo;
    lo.restarts = options.restarts;
    lo.threads = options.threads;
    const auto lower = compute_lower(n, seeds, lo);

    TableRow row;
    row.n = n;
    row.g_plus = upper.g_plus;
    row.g_plus_rounded = upper.g_plus_rounded;
    row.g_minus = lower.result.value;
    row.g_minus_rounded = lower.g_minus_rounded;
    row.ratio = round_down_sig(row.g_minus_rounded / row.g_plus_rounded, 3);
    row.bracket_lower = upper.search.bracket.lower;
    row.bracket_upper = upper.search.bracket.upper;
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const std::vector<TableRow>& rows) {
  Json j;
  j["command"] = "table";
  j["build_id"] = build_id();
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back(Json{{"n", r.n},
                       {"g_minus", r.g_minus},
                       {"g_plus", r.g_plus},
                       {"g_minus_rounded", format_sig(r.g_minus_rounded, 3)},
                       {"g_plus_rounded", format_sig(r.g_plus_rounded, 3)},
                       {"ratio", format_sig(r.ratio, 3)},
                       {"bracket", {r.bracket_lower, r.bracket_upper}}});
  }
  j["rows"] = arr;
  return j;
}

std::string table_text(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "n,G_minus,G_plus,ratio\n";
  for (const auto& r : rows) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", r.n);
    os << buf << ',' << format_sig(r.g_minus_rounded, 3) << ','
       << format_sig(r.g_plus_rounded, 3) << ',' << format_sig(r.ratio, 3) << '\n';
  }
  return os.str();
}

}  // namespace kato::pipeline
