// Acceptance suite: runs every verification criterion at full trial counts
// and the stated tolerances, printing one pass/fail line per criterion.
#include <cstdio>

#include "curvlab/selftest.hpp"

int main() {
  curvlab::selftest::Config config;
  config.seed = 42;
  config.scale = 1.0;

  const auto results = curvlab::selftest::run_all(config);
  std::fputs(curvlab::selftest::format_report(results).c_str(), stdout);

  const int failures = curvlab::selftest::count_failures(results);
  std::printf("%zu criteria, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
