#pragma once

#include <string>
#include <vector>

namespace topspin {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Reproduces the headline results shipped with the tool: the Lagrange
/// critical spin, the Kirchhoff alternatives, the square-root branch, the
/// model-family collision and the slow/fast stability flip seen dynamically.
std::vector<CheckResult> run_selftest();

}  // namespace topspin
