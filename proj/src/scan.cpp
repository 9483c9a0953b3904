#include "homega/scan.hpp"

#include <algorithm>
#include <cmath>

#include "homega/logspace.hpp"

namespace homega {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Member: return "Member";
    case Verdict::NonMember: return "NonMember";
    default: return "Inconclusive";
  }
}

std::string to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::Bounded: return "Bounded";
    case BoundVerdict::Diverging: return "Diverging";
    default: return "Inconclusive";
  }
}

std::vector<int> ScanSchedule::level_depths() const {
  std::vector<int> out;
  for (int d = min_depth; d < max_depth; d += level_step) out.push_back(d);
  if (out.empty() || out.back() != max_depth) out.push_back(max_depth);
  return out;
}

std::vector<double> geometric_grid(int depth) {
  std::vector<double> out;
  out.reserve(depth);
  for (int k = 1; k <= depth; ++k) out.push_back(1.0 - std::ldexp(1.0, -k));
  return out;
}

TraceAssessment assess_sup_trace(std::span<const TraceLevel> levels,
                                 const StabilizationPolicy& policy) {
  TraceAssessment out;
  const size_t n = levels.size();
  if (n < 2) return out;

  std::vector<double> inc(n - 1);
  for (size_t i = 0; i + 1 < n; ++i)
    inc[i] = levels[i + 1].log_stat - levels[i].log_stat;

  out.last_change = std::abs(inc.back());
  out.monotone = std::all_of(inc.begin(), inc.end(),
                             [](double d) { return d >= -1e-9; });

  // An infinite statistic that keeps being infinite is fast growth in
  // disguise (the ratio overflowed); treat any non-finite level as growth.
  const bool has_inf = std::any_of(levels.begin(), levels.end(), [](auto& l) {
    return !std::isfinite(l.log_stat) && l.log_stat > 0;
  });
  if (has_inf) {
    out.verdict = BoundVerdict::Diverging;
    return out;
  }

  const double log_growth = std::log1p(policy.growth_rel);
  if (n >= size_t(policy.growth_run) + 1) {
    bool fast = true;
    for (int j = 0; j < policy.growth_run; ++j)
      fast = fast && inc[n - 2 - j] > log_growth;
    if (fast) {
      out.verdict = BoundVerdict::Diverging;
      return out;
    }
  }

  const double log_stable = std::log1p(policy.stable_rel);
  if (n >= 3 && std::abs(inc[n - 2]) < log_stable &&
      std::abs(inc[n - 3]) < log_stable) {
    out.verdict = BoundVerdict::Bounded;
    return out;
  }
  // (for two-level traces fall back to the single available change)
  if (n == 2 && std::abs(inc[0]) < log_stable) {
    out.verdict = BoundVerdict::Bounded;
    return out;
  }

  // Slow monotone growth: the fast-growth rule misses logarithmic and
  // small-power divergence, but those have non-contracting increments.
  if (out.monotone && n >= 4) {
    double r = 0.0;
    int cnt = 0;
    for (size_t i = inc.size() >= 3 ? inc.size() - 3 : 0; i + 1 < inc.size();
         ++i) {
      if (inc[i] > 1e-12) {
        r += inc[i + 1] / inc[i];
        ++cnt;
      }
    }
    out.increment_ratio = cnt ? r / cnt : 0.0;
    if (cnt && out.increment_ratio >= policy.slow_ratio) {
      out.verdict = BoundVerdict::Diverging;
      return out;
    }
    // Contracting increments: extrapolate the geometric remainder.
    if (cnt && out.increment_ratio > 0.0 && out.increment_ratio < 1.0) {
      const double remaining =
          inc.back() * out.increment_ratio / (1.0 - out.increment_ratio);
      if (remaining < log_stable) {
        out.verdict = BoundVerdict::Bounded;
        return out;
      }
    }
  }
  return out;
}

Verdict assess_inf_trace(std::span<const TraceLevel> levels,
                         double log_threshold,
                         const StabilizationPolicy& policy) {
  const size_t n = levels.size();
  if (n < 2) return Verdict::Inconclusive;
  const double log_stable = std::log1p(policy.stable_rel);
  const double last = levels[n - 1].log_stat;
  const bool stable = std::abs(levels[n - 1].log_stat -
                               levels[n - 2].log_stat) < log_stable;
  if (stable && last > log_threshold) return Verdict::Member;
  return Verdict::Inconclusive;
}

double log_log_slope(std::span<const TraceLevel> levels) {
  // Slope vs depth*log2, using the later half of the trace only; the early
  // levels carry transients.
  const size_t n = levels.size();
  if (n < 2) return 0.0;
  const size_t start = n / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t i = start; i < n; ++i) {
    if (!std::isfinite(levels[i].log_stat)) return kPosInf;
    const double x = levels[i].depth * std::log(2.0);
    sx += x;
    sy += levels[i].log_stat;
    sxx += x * x;
    sxy += x * levels[i].log_stat;
    ++m;
  }
  const double denom = m * sxx - sx * sx;
  if (denom <= 0) return 0.0;
  return (m * sxy - sx * sy) / denom;
}

}  // namespace homega
