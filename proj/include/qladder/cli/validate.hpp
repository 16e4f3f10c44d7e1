#pragma once

#include <functional>
#include <string>
#include <vector>

namespace qladder::cli {

/// One invariant: passes iff measured <= bound (or >= bound when
/// `at_least` is set).
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool at_least = false;
  bool pass = false;
};

struct ValidateOptions {
  /// Fault injection: shifts alpha(a) inside the eigenvalue equation of every
  /// general-model solve. Zero for a real run.
  double alpha_shift = 0.0;
  /// Called after each check (progress reporting); may be empty.
  std::function<void(const CheckResult&)> on_result;
};

std::vector<CheckResult> run_validation(const ValidateOptions& opts = {});

}  // namespace qladder::cli
