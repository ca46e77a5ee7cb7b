#pragma once

#include <string>
#include <vector>

namespace twistvol {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  std::string line() const;  // "[PASS] 3 tube volume limit: ... (0.41 s)"
};

/// Runs acceptance criteria 1-10; `only` restricts to the listed ids.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {});

}  // namespace twistvol
