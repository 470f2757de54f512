#pragma once
// Release gate: ten numbered criteria, each a self-contained experiment with
// its tolerances pinned in code. A criterion reports every individual check
// with a human-readable detail line; the gate passes only if every check of
// every criterion passes. Workloads are sized so the full suite finishes in
// minutes on one core.

#include <string>
#include <vector>

namespace ltmc {

struct CriterionCheck {
  std::string label;   // what property is being checked
  std::string detail;  // measured numbers and the pinned tolerance
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;  // conjunction of the checks
  std::vector<CriterionCheck> checks;
  std::vector<std::string> artifacts;  // files written under out_dir, if any
};

// ids run 1..10; out_dir receives any artifacts (created on demand).
// Throws std::invalid_argument for an unknown id; computational failures
// inside a criterion are caught and reported as a failing check.
CriterionResult run_criterion(int id, const std::string& out_dir);

std::vector<CriterionResult> run_all_criteria(const std::string& out_dir);

}  // namespace ltmc
