#pragma once

#include <span>
#include <string>
#include <vector>

// Shared refinement / stabilization protocol.  Every supremum or infimum in
// the library is scanned on geometric grids r_k = 1 - 2^{-k} at increasing
// depths; verdicts are read off the trace of per-level statistics.  The
// statistic is carried as a logarithm so overflowing ratios stay ordered.

namespace homega {

enum class Verdict { Member, NonMember, Inconclusive };
enum class BoundVerdict { Bounded, Diverging, Inconclusive };

std::string to_string(Verdict v);
std::string to_string(BoundVerdict v);

struct TraceLevel {
  int depth;        // deepest grid index k used by this level
  double log_stat;  // log of the level statistic (sup or inf over the grid)
};

struct ScanSchedule {
  int min_depth = 10;
  int level_step = 5;
  int max_depth = 40;

  std::vector<int> level_depths() const;
};

struct StabilizationPolicy {
  double stable_rel = 0.01;   // both of the last two changes below 1%
  double growth_rel = 0.25;   // fast growth: three consecutive +25% steps
  int growth_run = 3;
  double slow_ratio = 0.92;   // increment-ratio separating slow divergence
                              // from geometric convergence
};

struct TraceAssessment {
  BoundVerdict verdict = BoundVerdict::Inconclusive;
  double last_change = 0.0;      // |log-change| across the final step
  double increment_ratio = 0.0;  // mean ratio of successive increments
  bool monotone = false;
};

// Assessment of a supremum trace: stabilized -> Bounded, fast or sustained
// monotone growth -> Diverging, otherwise Inconclusive.
TraceAssessment assess_sup_trace(std::span<const TraceLevel> levels,
                                 const StabilizationPolicy& policy = {});

// Assessment of an infimum trace against a threshold: the trace is
// nonincreasing by construction, so Member requires stabilization at a
// value above log_threshold; values stabilizing at or under the threshold
// are Inconclusive ("hovering near 1").
Verdict assess_inf_trace(std::span<const TraceLevel> levels,
                         double log_threshold,
                         const StabilizationPolicy& policy = {});

// Least-squares slope of log_stat against depth * log 2, i.e. the power of
// 1/(1-r) the trace grows like.  Zero for stabilized traces.
double log_log_slope(std::span<const TraceLevel> levels);

// r_k = 1 - 2^{-k}, k = 1..depth.
std::vector<double> geometric_grid(int depth);

inline Verdict to_membership(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::Bounded: return Verdict::Member;
    case BoundVerdict::Diverging: return Verdict::NonMember;
    default: return Verdict::Inconclusive;
  }
}

}  // namespace homega
