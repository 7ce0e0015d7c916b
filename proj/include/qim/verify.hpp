#pragma once

// Seeded property suite over every invariant of the library. Failures are
// data: each check reports its worst violation against a named tolerance.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qim/algebra.hpp"

namespace qim {

enum class Execution { serial, parallel };

struct VerifyConfig {
  std::vector<BlockShape> dims;
  int samples = 100;
  std::uint64_t seed = 1;
  std::string tol_profile = "default";
  Execution execution = Execution::parallel;
  /// Empty: all checks. Otherwise only the named ones (unknown names throw).
  std::vector<std::string> only;
};

/// {[2], [3], [4], [2,2], [1,1,1,1]}
std::vector<BlockShape> default_dims();

struct CheckResult {
  std::string name;
  std::string anchor;
  bool passed = false;
  double max_violation = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  std::string note;
};

struct Report {
  std::string suite;
  VerifyConfig config;
  std::vector<CheckResult> checks;  // sorted by name
  double wall_time_s = 0.0;

  bool passed() const;
};

/// Tolerance per check name; ValidationError for an unknown profile.
double profile_tolerance(const std::string& profile, const std::string& check);
bool known_profile(const std::string& profile);

std::vector<std::string> check_names();

Report run_suite(const VerifyConfig& config);
CheckResult run_check(const std::string& name, const VerifyConfig& config);

nlohmann::json report_json(const Report& report);

}  // namespace qim
