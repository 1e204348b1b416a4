// Integration gate: runs every verification check and prints one line per
// check. Exits nonzero when any of them fails.
#include <cstdio>

#include "sptree/verify.hpp"

int main() {
  sptree::VerifyReport report = sptree::run_verification(/*seed=*/7);
  std::fputs(report.text().c_str(), stdout);
  int failed = 0;
  for (const auto& check : report.checks)
    if (!check.passed) ++failed;
  if (failed > 0) std::fprintf(stdout, "%d check(s) failed\n", failed);
  return failed;
}
