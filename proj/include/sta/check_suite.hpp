#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Algebraic invariant suite shared by the CLI `check` command and the test
// harness: anticommutation, associativity, involution laws, grading, the
// canonical roundtrip, the biquaternion isomorphism and the ideal projection.

namespace sta {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // summary metric, or the failing counterexample
};

struct CheckOptions {
  std::uint64_t seed = 1;
  int trials = 1000;
  // Test hook: run the anticommutation check through a Cayley table with one
  // sign flipped, to prove the suite catches a corrupted table.
  bool corrupt_cayley = false;
};

std::vector<CheckResult> run_algebra_checks(const CheckOptions& opts);

}  // namespace sta
