#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "homega/scan.hpp"

// Report types shared by the condition checkers and the verification scans,
// plus their JSON / CSV serialization.

namespace homega {

struct RatioSample {
  double x = 0.0, y = 0.0;  // grid point (second coordinate 0 for 1-D scans)
  double lhs = 0.0, rhs = 0.0;
  double log_ratio = 0.0;
};

// Two-sided-estimate scan: the band [ratio_min, ratio_max] of lhs/rhs over
// a grid, with a stability flag (band width change < 10% over the last two
// refinement levels).
struct RatioReport {
  std::string lhs_id, rhs_id;
  std::string weight;
  std::string grid;
  double ratio_min = 0.0, ratio_max = 0.0;
  double log_ratio_min = 0.0, log_ratio_max = 0.0;
  bool stable = false;
  std::vector<std::array<double, 2>> band_trace;  // per level [log lo, log hi]
  std::vector<RatioSample> samples;
  int skipped_points = 0;  // grid points excluded (budget/degenerate)
};

// Supremum scan of a boundedness condition.
struct ConditionReport {
  std::string condition_id;  // lp_hp | bergman_primary | bergman_secondary |
                             // h1_average | carleson_box | ap
  std::map<std::string, double> params;
  std::string weight, nu;
  BoundVerdict verdict = BoundVerdict::Inconclusive;
  std::vector<std::array<double, 3>> sup_trace;  // (grid point, value, log value)
  std::vector<TraceLevel> levels;
  double slope_estimate = 0.0;
  bool hypothesis_dhat = true;  // the theorem behind the condition assumes
                                // upper doubling; false tags out-of-scope runs
};

// Operator-norm probe along a family of test functions.
struct ProbeReport {
  std::string probe_id;      // hinfty_bloch | h1 | lp
  std::string operator_desc;
  std::string source_norm, target_norm;
  std::string family;
  std::map<std::string, double> params;
  std::string weight;
  BoundVerdict verdict = BoundVerdict::Inconclusive;
  std::vector<std::array<double, 3>> trace;  // (parameter, ratio, log ratio)
  std::vector<TraceLevel> levels;
  double slope_estimate = 0.0;
  bool hypothesis_dhat = true;
  std::string cross_check_id;  // the condition this probe is checked against
};

std::string to_json(const RatioReport&);
std::string to_json(const ConditionReport&);
std::string to_json(const ProbeReport&);

void write_csv(std::ostream&, const RatioReport&);
void write_csv(std::ostream&, const ConditionReport&);
void write_csv(std::ostream&, const ProbeReport&);

}  // namespace homega
