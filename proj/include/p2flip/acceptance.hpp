#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "p2flip/wallcross.hpp"

namespace p2flip {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool skipped = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  std::uint64_t seed = kDefaultSeed;
  bool include_slow = true;  // criteria 4 and 10 need the full 49-point enumeration
  int jobs = 1;
  HodgeData data;
  std::vector<int> only;  // empty: every criterion
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// Runs the selected criteria in order; when out is set, prints one line per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream* out = nullptr);

/// "PASS [3] title: detail (0.01 s)" or "SKIPPED ..." / "FAIL ...".
std::string format_line(const CriterionResult& r);

/// True when nothing failed (skips do not count as failures).
bool all_passed(const std::vector<CriterionResult>& results);

nlohmann::ordered_json to_json(const CriterionResult& r);

}  // namespace p2flip
