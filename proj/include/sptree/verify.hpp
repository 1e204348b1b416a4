#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sptree {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // deterministic given the seed
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::string text() const;  // one line per check
  std::string json_text() const;
};

/// Runs the full verification suite. Deterministic given the seed; time
/// budgets are enforced but never reported in the output.
VerifyReport run_verification(std::uint64_t seed);

}  // namespace sptree
