#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace curvlab::selftest {

struct Config {
  std::uint64_t seed = 42;
  /// Multiplier on every trial count; the acceptance suite runs at 1.0 and
  /// the CLI selftest at a reduced scale.
  double scale = 1.0;
  double tol_membership = 1e-8;
  double tol_kernel = 1e-10;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the full verification suite: randomized identity checks, the kernel
/// law, membership classification totality, permutation round-trips,
/// class obstructions, contraction oracles, symmetric-function invariance,
/// the polynomial manifold family, and commuting-operator decomposition.
std::vector<CriterionResult> run_all(const Config& config);

std::string format_report(const std::vector<CriterionResult>& results);
int count_failures(const std::vector<CriterionResult>& results);

}  // namespace curvlab::selftest
