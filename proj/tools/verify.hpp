#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rhop::verify {

enum class Suite { fast, full };

/// One acceptance criterion: the worst residual over its sub-checks
/// against the tightest tolerance it must meet.
struct Check {
  int id = 0;
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  double time_limit = 0.0;  ///< 0: none
  std::string detail;       ///< failing sub-check, or the error text
};

struct Report {
  Suite suite = Suite::fast;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool pass() const;
};

/// `fast` caps every degree at 8; `full` uses the acceptance parameters.
Check run_criterion(int id, Suite suite, std::uint64_t seed);
/// Criteria 1-11 in order.
Report run_all(Suite suite, std::uint64_t seed);

std::string report_json(const Report& r);

}  // namespace rhop::verify
