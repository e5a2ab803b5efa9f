// Acceptance run: one PASS/FAIL line per criterion.
//
// Usage: kato_acceptance [--strict]
// Without --strict the exit status ignores failures listed in kKnownFailures.

#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kato/gfunction.hpp"
#include "kato/kernel.hpp"
#include "kato/lowerbound.hpp"
#include "kato/pipeline.hpp"
#include "kato/verify.hpp"

namespace {

using namespace kato;

const std::set<int> kKnownFailures{2};

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

struct Criterion {
  int id;
  std::string title;
  bool passed = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      notes.push_back(what);
    }
  }
  void close(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(8);
    s << what << " = " << got << " vs " << want << " (rel " << rel(got, want) << ")";
    expect(rel(got, want) <= tol, s.str());
  }
};

void report(const Criterion& c) {
  std::printf("%s %d %s\n", c.passed ? "PASS" : "FAIL", c.id, c.title.c_str());
  for (const auto& n : c.notes) std::printf("    %s\n", n.c_str());
}

std::string key(double n) {
  std::ostringstream s;
  s << "n=" << n;
  return s.str();
}

Criterion table_reproduction(std::vector<pipeline::TableRow>& rows) {
  Criterion c{1, "table of G- and G+ for n = 3, 4, 5, 10"};
  rows = pipeline::compute_table({});
  const std::vector<double> gp{0.438, 0.484, 0.749, 7.56};
  const std::vector<double> gm{0.114, 0.181, 0.280, 2.41};
  c.expect(rows.size() == 4, "expected four rows");
  for (std::size_t i = 0; i < rows.size() && i < 4; ++i) {
    c.close(rows[i].g_plus_rounded, gp[i], 1e-12, "G+ " + key(rows[i].n));
    c.close(rows[i].g_minus_rounded, gm[i], 1e-12, "G- " + key(rows[i].n));
  }
  return c;
}

Criterion kernel_constants(verify::UpperCache& cache) {
  Criterion c{2, "kernel constants C_n and remainder extrema"};
  const std::vector<std::pair<double, double>> cn{
      {3.0, 14.814}, {4.0, 58.460}, {5.0, 215.97}, {10.0, 1.3467e5}};
  for (const auto& [n, v] : cn) c.close(cache.get(n).c_n, v, 1e-3, "C " + key(n));
  const auto& r3 = cache.get(3.0).remainder;
  c.close(r3.lambda, -72.563, 1e-3, "lambda_38");
  c.close(r3.Lambda, 202.91, 1e-3, "Lambda_38");
  c.close(r3.mu, -159.61, 1e-3, "mu_38");
  c.close(r3.M, 930.73, 1e-3, "M_38");
  const std::vector<std::array<double, 3>> rest{
      {4.0, -112.95, 904.92}, {5.0, -432.09, 4970.4}, {10.0, -1.3678e4, 5.0076e6}};
  for (const auto& [n, lo, hi] : rest) {
    const auto& r = cache.get(n).remainder;
    c.close(r.lambda, lo, 1e-3, "lambda_6 " + key(n));
    c.close(r.Lambda, hi, 1e-3, "Lambda_6 " + key(n));
  }
  return c;
}

Criterion lattice_quantities(verify::UpperCache& cache) {
  Criterion c{3, "Gamma at the reported maximizers and argmax of the search"};
  struct Row {
    double n;
    WaveVector k;
    double value;
  };
  const std::vector<Row> rows{{3.0, {9, 9, 9}, 34.901},
                              {4.0, {2, 1, 0}, 56.628},
                              {5.0, {2, 1, 0}, 138.96},
                              {10.0, {2, 1, 0}, 1.4143e4}};
  for (const auto& r : rows) {
    c.close(gfunction::gamma(gfunction::CutoffConfig::defaults_for(r.n), r.k), r.value, 2e-4,
            "Gamma " + key(r.n));
    const auto& b = cache.get(r.n).bracket;
    c.expect(b.argmax == r.k, "argmax " + key(r.n) + " differs");
  }
  return c;
}

Criterion tail_bounds(verify::UpperCache& cache) {
  Criterion c{4, "delta G and the sup-G brackets"};
  const std::vector<std::pair<double, double>> dg{
      {3.0, 12.478}, {4.0, 1.2626}, {5.0, 0.067895}, {10.0, 1.0366e-7}};
  for (const auto& [n, v] : dg) c.close(cache.get(n).bracket.delta, v, 2e-3, "delta " + key(n));
  const std::vector<std::array<double, 3>> br{
      {3.0, 34.901, 47.381}, {4.0, 56.628, 57.892}, {5.0, 138.96, 139.04}};
  for (const auto& [n, lo, hi] : br) {
    const auto& b = cache.get(n).bracket;
    c.close(b.lower, lo, 2e-3, "bracket lower " + key(n));
    c.close(b.upper, hi, 2e-3, "bracket upper " + key(n));
    c.expect(b.lower <= b.upper, "empty bracket " + key(n));
    c.expect(!b.tail_limited, "tail-limited bracket " + key(n));
  }
  return c;
}

Criterion asymptotics(verify::UpperCache& cache) {
  Criterion c{5, "leading asymptotic polynomials and their sphere extrema"};
  const auto& t3 = cache.get(3.0).asymptotics.terms.at(0);
  const std::vector<int> e0{0, 0, 0}, e22{2, 2, 0}, e4{4, 0, 0};
  c.close(t3.P.coefficient(e0), 58.311, 2e-4, "P30 constant");
  c.close(t3.P.coefficient(e22), -39.076, 2e-4, "P30 s1^2 s2^2");
  c.close(t3.P.coefficient(e4), -34.683, 2e-4, "P30 s1^4");
  c.close(t3.P_range.min_value, 23.627, 1e-3, "min P30");
  c.close(t3.P_range.max_value, 33.724, 1e-3, "max P30");
  const std::vector<std::array<double, 3>> lim{
      {4.0, 11.716, 31.378}, {5.0, 8.5405, 40.611}, {10.0, 4.4157, 137.61}};
  for (const auto& [n, lo, hi] : lim) {
    const auto& t = cache.get(n).asymptotics.terms.at(0);
    c.close(t.P_range.min_value, lo, 1e-3, "liminf " + key(n));
    c.close(t.P_range.max_value, hi, 1e-3, "limsup " + key(n));
  }
  return c;
}

void absorb(Criterion& c, const verify::VerifyReport& r) {
  for (const auto& p : r.properties) {
    std::ostringstream s;
    s << p.suite << "." << p.name << ": " << p.violations << " of " << p.samples
      << " samples violate (worst " << p.worst << ", tol " << p.tolerance << ")";
    c.expect(p.passed, s.str());
  }
}

Criterion identity_suite() {
  Criterion c{6, "identity suite"};
  verify::VerifyOptions o;
  o.suite = "identities";
  o.samples = 1000;
  absorb(c, verify::run(o));
  return c;
}

Criterion inequality_suite(verify::UpperCache& cache, verify::VerifyReport& kato_report) {
  Criterion c{7, "inequality suite and the Kato inequality"};
  verify::VerifyOptions o;
  o.samples = 10000;
  verify::VerifyReport r;
  r.properties = verify::inequalities(o, cache);
  absorb(c, r);
  o.samples = 1000;
  kato_report.properties = verify::kato(o, cache);
  for (const auto& p : kato_report.properties) {
    if (p.name == "kato_inequality") {
      verify::VerifyReport k;
      k.properties.push_back(p);
      absorb(c, k);
      c.expect(p.samples >= 1000, "fewer than 1000 Kato samples per n");
    }
  }
  return c;
}

Criterion cross_pipeline(verify::UpperCache& cache, const std::vector<pipeline::TableRow>& rows,
                         const verify::VerifyReport& kato_report) {
  Criterion c{8, "every lower bound stays below the upper bound"};
  for (const auto& r : rows) {
    c.expect(r.g_minus <= r.g_plus, "table row " + key(r.n));
    c.expect(r.g_minus_rounded <= r.g_plus_rounded, "rounded table row " + key(r.n));
  }
  for (const auto& p : kato_report.properties) {
    if (p.name == "lower_below_upper") {
      c.expect(p.passed && p.violations == 0, "sampled lower bounds exceed G+");
    }
  }
  lowerbound::LowerOptions lo;
  lo.restarts = 5;
  lo.seed = 11;
  for (double n : verify::kSuiteOrders) {
    const auto res = lowerbound::optimize_lower(n, {lowerbound::TrialParams{}}, lo);
    c.expect(res.value <= cache.g_plus(n), "optimized lower bound from a zero seed " + key(n));
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::string(argv[1]) == "--strict";
  verify::UpperCache cache;
  std::vector<pipeline::TableRow> rows;
  verify::VerifyReport kato_report;

  std::vector<Criterion> all;
  all.push_back(table_reproduction(rows));
  all.push_back(kernel_constants(cache));
  all.push_back(lattice_quantities(cache));
  all.push_back(tail_bounds(cache));
  all.push_back(asymptotics(cache));
  all.push_back(identity_suite());
  all.push_back(inequality_suite(cache, kato_report));
  all.push_back(cross_pipeline(cache, rows, kato_report));

  int unexpected = 0;
  int known = 0;
  for (const auto& c : all) {
    report(c);
    if (c.passed) continue;
    if (kKnownFailures.count(c.id)) {
      ++known;
    } else {
      ++unexpected;
    }
  }
  std::printf("summary: %zu criteria, %d unexpected failures, %d known failures\n", all.size(),
              unexpected, known);
  if (strict) return unexpected + known == 0 ? 0 : 1;
  return unexpected == 0 ? 0 : 1;
}
