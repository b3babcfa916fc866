// Acceptance gate: runs every criterion of the selftest battery and prints
// one PASS/FAIL line per criterion.  Exits nonzero if any criterion fails.
#include <cstdio>

#include "bioct/selftest.hpp"

int main() {
  bioct::SelftestOptions opts;
  opts.seed = 20260824;
  auto results = bioct::run_selftest(opts);
  int failures = 0;
  int idx = 0;
  for (const auto& r : results) {
    ++idx;
    std::printf("%s criterion-%d %s (%.1fs) %s\n", r.pass ? "PASS" : "FAIL",
                idx, r.name.c_str(), r.seconds, r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%d/%d criteria passed\n", static_cast<int>(results.size()) - failures,
              static_cast<int>(results.size()));
  return failures == 0 ? 0 : 1;
}
