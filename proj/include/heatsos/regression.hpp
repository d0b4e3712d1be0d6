#pragma once

#include <functional>
#include <string>
#include <vector>

namespace heatsos {

/// One reference example with its published expectation.
struct RegressionCheck {
  std::string name;
  std::string expected;
  /// Returns the observed outcome; sets `passed`.
  std::function<std::string(bool& passed)> run;
};

struct RegressionOutcome {
  std::string name;
  std::string expected;
  std::string observed;
  bool passed = false;
  double seconds = 0.0;
};

std::vector<RegressionCheck> regression_checks();

/// Runs the checks on up to `threads` threads (0: OpenMP default); results
/// keep the order of `checks`.
std::vector<RegressionOutcome> run_regression(const std::vector<RegressionCheck>& checks, int threads);

/// Fixed-width pass/fail table.
std::string format_regression_table(const std::vector<RegressionOutcome>& outcomes);

}  // namespace heatsos
