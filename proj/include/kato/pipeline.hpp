#pragma once

// End-to-end drivers shared by the command-line tool and the Python module:
// the upper-bound pipeline, the lower-bound search, and the summary table.

#include <string>
#include <vector>

#include <json.hpp>

#include "kato/gfunction.hpp"
#include "kato/lowerbound.hpp"

namespace kato::pipeline {

using Json = nlohmann::ordered_json;

/// Short source revision recorded in reports.
std::string build_id();

struct UpperReport {
  gfunction::CutoffConfig config;
  gfunction::SupSearch search;
  double g_plus = 0.0;          ///< unrounded
  double g_plus_rounded = 0.0;  ///< rounded up to 3 significant digits
  double seconds = 0.0;
};

UpperReport compute_upper(const gfunction::CutoffConfig& config,
                          const gfunction::SupSearchOptions& options = {});
Json to_json(const UpperReport& report);
/// "k1,...,kd,gamma" rows over the enumerated region (needs keep_values).
std::string gamma_csv(const UpperReport& report);

struct LowerReport {
  double n = 0.0;
  lowerbound::LowerResult result;
  double g_minus_rounded = 0.0;  ///< rounded down to 3 significant digits
  double seconds = 0.0;
};

LowerReport compute_lower(double n, const std::vector<lowerbound::TrialParams>& seeds,
                          const lowerbound::LowerOptions& options = {});
Json to_json(const LowerReport& report);

struct TableRow {
  double n = 0.0;
  double g_minus = 0.0;
  double g_plus = 0.0;
  double g_minus_rounded = 0.0;
  double g_plus_rounded = 0.0;
  /// Rounded G^- over rounded G^+, rounded down.
  double ratio = 0.0;
  double bracket_lower = 0.0;
  double bracket_upper = 0.0;
};

struct TableOptions {
  std::vector<double> ns{3.0, 4.0, 5.0, 10.0};
  /// rho = 6, t = 4 for every n.
  bool quick = false;
  int restarts = 20;
  unsigned threads = 0;
};

std::vector<TableRow> compute_table(const TableOptions& options = {});
Json to_json(const std::vector<TableRow>& rows);
std::string table_text(const std::vector<TableRow>& rows);

}  // namespace kato::pipeline
