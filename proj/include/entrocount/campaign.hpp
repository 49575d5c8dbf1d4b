#pragma once

// Seeded randomized verification campaigns over the entropy, Shearer,
// set-family and permanent inequalities.
//
// Every individual check is described by a self-contained JSON "case"
// ({"check", "alpha", "input", "params", "tolerance"}) and evaluated by
// evaluate_case(). The campaign builds cases and evaluates them through the
// same function, so a dumped case replays to the same lhs/rhs bit for bit.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace entrocount {

enum class Suite { kEntropy, kShearer, kFamily, kPermanent, kAll };

Suite parse_suite(const std::string& name);
std::string to_string(Suite suite);

struct RunConfig {
  std::uint64_t seed = 42;
  double tolerance = 1e-10;
  /// Empty selects each suite's default alpha list.
  std::vector<double> alphas;
  std::size_t instances = 100;
  double bernoulli_p = 0.5;
  std::size_t max_matrix_dim = 10;
  /// Record every case, not only violations (capped by max_records).
  bool record_all = false;
  std::size_t max_records = 100;
};

void validate(const RunConfig& config);

struct CheckStats {
  std::size_t cases = 0;
  std::size_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
};

struct CampaignSummary {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::size_t excluded_zero_row = 0;
  std::map<std::string, CheckStats> checks;
  std::vector<nlohmann::json> records;

  std::size_t total_cases() const;
  std::size_t total_violations() const;
  double worst_slack() const;
  bool ok() const { return total_violations() == 0; }

  nlohmann::json to_json() const;
  std::string to_table() const;
};

struct CaseOutcome {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  /// rhs - lhs for inequalities, -|lhs - rhs| for equalities.
  double slack = 0.0;
};

CaseOutcome evaluate_case(const nlohmann::json& c);

/// Accepts a record ({"case": ...}), a bare case, an array of either, or a
/// campaign summary; returns one outcome object per case.
nlohmann::json replay(const nlohmann::json& dump);

CampaignSummary run_campaign(Suite suite, const RunConfig& config);

/// Default alpha lists per suite.
std::vector<double> default_alphas(Suite suite);
/// Eight evenly spaced points on [1, 3.67].
std::vector<double> intersection_alpha_grid();

}  // namespace entrocount
