#pragma once

// Seeded property suites comparing the production code against the
// reference oracles and against the inequalities it is meant to certify.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "kato/gfunction.hpp"

namespace kato::verify {

using Json = nlohmann::ordered_json;

struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = true;
  std::size_t samples = 0;
  std::size_t violations = 0;
  /// Largest observed value of the checked measure (an error or a ratio).
  double worst = 0.0;
  double tolerance = 0.0;
  std::string measure;
  /// Inputs of the first violating sample; null when none.
  Json counterexample;
};

struct VerifyOptions {
  /// identities, inequalities, kato or all.
  std::string suite = "all";
  std::size_t samples = 1000;
  std::uint64_t seed = 7;
  unsigned threads = 0;
};

struct VerifyReport {
  std::vector<PropertyResult> properties;
  [[nodiscard]] bool passed() const;
  [[nodiscard]] const PropertyResult* first_failure() const;
};

Json to_json(const PropertyResult& r);
Json to_json(const VerifyReport& r);

/// Lazily computed upper-bound pipelines for the default configuration of
/// each n, shared between suites.
class UpperCache {
 public:
  explicit UpperCache(unsigned threads = 0) : threads_(threads) {}
  const gfunction::SupSearch& get(double n);
  double g_plus(double n);

 private:
  unsigned threads_;
  std::map<double, gfunction::SupSearch> cache_;
};

/// Orders of the Sobolev index exercised by the inequality and Kato suites.
inline const std::vector<double> kSuiteOrders{3.0, 4.0, 5.0, 10.0};

std::vector<PropertyResult> identities(const VerifyOptions& options);
std::vector<PropertyResult> inequalities(const VerifyOptions& options, UpperCache& cache);
std::vector<PropertyResult> kato(const VerifyOptions& options, UpperCache& cache);

/// Throws std::invalid_argument for an unknown suite name.
VerifyReport run(const VerifyOptions& options);

}  // namespace kato::verify
