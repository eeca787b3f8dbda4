#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qes/sum_engine.hpp"

namespace qes {

struct GridPoint {
  int n;
  int m;
  bool operator==(const GridPoint&) const = default;
};

/// Parses "1..3x3,5,7" (n range or list, then 'x', then m list) and
/// ";"-separated unions of such blocks. Throws std::invalid_argument on bad
/// syntax, n < 1, or m not odd >= 3.
std::vector<GridPoint> parse_grid(std::string_view text);

struct ClaimConfig {
  std::optional<std::vector<GridPoint>> grid;  ///< overrides the claim's default grid
  std::uint64_t seed = 20240607;
  SweepOptions sweep;
};

struct ClaimResult {
  int number = 0;
  std::string id;
  std::string title;
  bool passed = false;
  nlohmann::json details;
  std::optional<nlohmann::json> counterexample;
};

struct ClaimInfo {
  int number;
  std::string id;
  std::string title;
  bool uses_grid;
};

const std::vector<ClaimInfo>& claim_catalog();

/// Accepts the id or the number as text. Throws std::invalid_argument for unknown claims.
ClaimResult run_claim(std::string_view id, const ClaimConfig& config);

/// Runs every claim in catalog order, sharing exhaustive scans between claims.
std::vector<ClaimResult> run_all_claims(const ClaimConfig& config);

/// {"number", "id", "title", "passed", "failed", "details", "counterexample"?}
nlohmann::json to_json(const ClaimResult& result);

}  // namespace qes
