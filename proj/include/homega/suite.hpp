#pragma once

#include <string>
#include <vector>

// Acceptance matrix: every oracle- and property-based criterion the build
// must satisfy, with tolerances and runtime budgets pinned in code.  Used
// both by the acceptance test binary and by the `suite` CLI subcommand.
// Deterministic: fixed seeds, fixed grids.

namespace homega::suite {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

CriterionResult run_criterion(int id);

// Runs criteria 1..9 in order.
std::vector<CriterionResult> run_acceptance();

// "[PASS] 3 operator-oracle ..." one line per criterion.
std::string format_line(const CriterionResult& r);

}  // namespace homega::suite
