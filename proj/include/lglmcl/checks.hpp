#pragma once

#include <string>
#include <vector>

namespace lglmcl {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Measured quantity and the tolerance it was held to.
  double value = 0.0;
  double tolerance = 0.0;
};

/// Fast invariant suite: SBP identities, two-point flux entropy properties,
/// free-stream preservation, discrete conservation and the linear dependence of
/// the step size on the CFL number.
std::vector<CheckResult> run_invariant_checks(unsigned seed = 12345);

}  // namespace lglmcl
