#include "homega/conditions.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "homega/logspace.hpp"
#include "homega/quadrature.hpp"

namespace homega {

namespace {

double u_of(int k) { return std::ldexp(1.0, -k); }

// log ∫_0^t g dr with g >= 0 given by log g(u), u = 1 - r.  Panel cache over
// the dyadic grid plus a partial panel per query.  Not thread-safe; one
// instance lives inside one scan.
class LogPrefixIntegral {
 public:
  LogPrefixIntegral(std::function<double(double)> log_g, double tol)
      : log_g_(std::move(log_g)), opt_{tol, 0.0, 60} {}

  // log ∫_0^{1-u} g dr
  double at_one_minus(double u) {
    if (u >= 1.0) return kNegInf;
    const int j = std::min(1040, int(std::floor(-std::log2(u))));
    ensure(j);
    // full panels 0..j-1 cover r up to 1 - 2^{-j}; partial over [u, 2^{-j}]
    double acc = prefix_[j];
    if (u < u_of(j))
      acc = log_add(acc, adaptive_log(log_g_, u, u_of(j), opt_).log_value);
    return acc;
  }

 private:
  void ensure(int j) {
    while (int(panels_.size()) < j) {
      const int i = int(panels_.size());
      panels_.push_back(
          adaptive_log(log_g_, u_of(i + 1), u_of(i), opt_).log_value);
      prefix_.push_back(log_add(prefix_.back(), panels_.back()));
    }
  }

  std::function<double(double)> log_g_;
  QuadOptions opt_;
  std::vector<double> panels_;
  std::vector<double> prefix_{kNegInf};  // prefix_[j] = log sum of panels < j
};

struct SegmentedScan {
  // seg[j] = log ∫ over r in [r_{j-1}, r_j] (r_0 = 0), j = 1..K
  std::vector<double> prefix;  // prefix[k] = log ∫_0^{r_k}
  std::vector<double> suffix;  // suffix[k] = log ∫_{r_k}^1
  bool tail_diverges = false;
};

SegmentedScan segment_integrals(const std::function<double(double)>& log_g,
                                int depth, double tol, bool need_suffix) {
  SegmentedScan out;
  QuadOptions opt{tol, 0.0, 60};
  std::vector<double> seg(depth + 1, kNegInf);
  for (int j = 1; j <= depth; ++j)
    seg[j] = adaptive_log(log_g, u_of(j), u_of(j - 1), opt).log_value;
  out.prefix.assign(depth + 1, kNegInf);
  for (int j = 1; j <= depth; ++j)
    out.prefix[j] = log_add(out.prefix[j - 1], seg[j]);
  if (need_suffix) {
    auto tail = graded_log_to_zero(log_g, u_of(depth), opt);
    out.tail_diverges = tail.diverging || !tail.converged;
    out.suffix.assign(depth + 1, tail.log_value);
    for (int j = depth; j >= 1; --j)
      out.suffix[j - 1] = log_add(out.suffix[j], seg[j]);
  }
  return out;
}

// Shared scaffold: evaluate the log statistic on the grid, build prefix-sup
// levels, assess, fill the report.
ConditionReport finish_scan(std::string id, const Weight& w, const Weight* nu,
                            std::map<std::string, double> params,
                            const ScanSchedule& sched,
                            const std::vector<double>& log_stat,
                            bool tail_diverges) {
  ConditionReport rep;
  rep.condition_id = std::move(id);
  rep.weight = w.description();
  if (nu) rep.nu = nu->description();
  rep.params = std::move(params);
  rep.hypothesis_dhat = in_dhat(w);

  std::vector<TraceLevel> points;
  for (int k = 1; k <= sched.max_depth; ++k) {
    const double r = 1.0 - u_of(k);
    rep.sup_trace.push_back({r, std::exp(log_stat[k]), log_stat[k]});
    points.push_back({k, log_stat[k]});
  }
  rep.slope_estimate = log_log_slope(points);

  if (tail_diverges) {
    rep.verdict = BoundVerdict::Diverging;
    return rep;
  }
  for (int depth : sched.level_depths()) {
    double sup = kNegInf;
    for (int k = 1; k <= depth; ++k) sup = std::max(sup, log_stat[k]);
    rep.levels.push_back({depth, sup});
  }
  rep.verdict = assess_sup_trace(rep.levels).verdict;
  return rep;
}

}  // namespace

ConditionReport check_lp_hp(const Weight& w, double p,
                            const ScanSchedule& sched) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw DomainError("check_lp_hp: need 1 < p < inf");
  const double pc = p / (p - 1.0);
  const double tol = w.quadrature_tolerance();

  auto first = segment_integrals(
      [&](double u) { return -p * w.log_tail_at_one_minus(u); },
      sched.max_depth, tol, false);
  auto second = segment_integrals(
      [&](double u) { return pc * w.log_value_at_one_minus(u); },
      sched.max_depth, tol, true);

  std::vector<double> stat(sched.max_depth + 1, kNegInf);
  for (int k = 1; k <= sched.max_depth; ++k)
    stat[k] = log1p_exp(first.prefix[k]) / p + second.suffix[k] / pc;
  return finish_scan("lp_hp", w, nullptr, {{"p", p}}, sched, stat,
                     second.tail_diverges);
}

ConditionReport check_bergman_primary(const Weight& w, const Weight& nu,
                                      double p, const ScanSchedule& sched) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw DomainError("check_bergman_primary: need 1 < p < inf");
  const double pc = p / (p - 1.0);
  const double tol = w.quadrature_tolerance();

  auto first = segment_integrals(
      [&](double u) {
        return nu.log_tail_at_one_minus(u) - p * w.log_tail_at_one_minus(u);
      },
      sched.max_depth, tol, false);
  auto second = segment_integrals(
      [&](double u) {
        return pc * (w.log_value_at_one_minus(u) -
                     nu.log_tail_at_one_minus(u) / p);
      },
      sched.max_depth, tol, true);

  std::vector<double> stat(sched.max_depth + 1, kNegInf);
  for (int k = 1; k <= sched.max_depth; ++k)
    stat[k] = log1p_exp(first.prefix[k]) / p + second.suffix[k] / pc;
  return finish_scan("bergman_primary", w, &nu, {{"p", p}}, sched, stat,
                     second.tail_diverges);
}

ConditionReport check_bergman_secondary(const Weight& w, const Weight& nu,
                                        double p, const ScanSchedule& sched) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw DomainError("check_bergman_secondary: need 1 < p < inf");
  const double pc = p / (p - 1.0);
  const double tol = w.quadrature_tolerance();

  auto inner = segment_integrals(
      [&](double u) {
        return pc * (w.log_value_at_one_minus(u) -
                     nu.log_tail_at_one_minus(u) / p -
                     w.log_tail_at_one_minus(u));
      },
      sched.max_depth, tol, false);

  std::vector<double> stat(sched.max_depth + 1, kNegInf);
  for (int k = 1; k <= sched.max_depth; ++k) {
    const double u = u_of(k);
    stat[k] = (std::log(u) + nu.log_tail_at_one_minus(u)) / p +
              inner.prefix[k] / pc;
  }
  return finish_scan("bergman_secondary", w, &nu, {{"p", p}}, sched, stat,
                     false);
}

ConditionReport check_h1_average(const Weight& w, const ScanSchedule& sched) {
  const double tol = w.quadrature_tolerance();
  LogPrefixIntegral reciprocal_tail(
      [&](double u) { return -w.log_tail_at_one_minus(u); }, tol);

  auto outer = segment_integrals(
      [&](double u) {
        return w.log_value_at_one_minus(u) +
               log1p_exp(reciprocal_tail.at_one_minus(u));
      },
      sched.max_depth, tol, true);

  std::vector<double> stat(sched.max_depth + 1, kNegInf);
  for (int k = 1; k <= sched.max_depth; ++k)
    stat[k] = k * std::log(2.0) + outer.suffix[k];
  return finish_scan("h1_average", w, nullptr, {}, sched, stat,
                     outer.tail_diverges);
}

ConditionReport check_carleson_box(const Weight& w, const ScanSchedule& sched) {
  const double tol = w.quadrature_tolerance();
  LogPrefixIntegral reciprocal_tail(
      [&](double u) { return -w.log_tail_at_one_minus(u); }, tol);
  auto density = [&](double u) {
    return w.log_value_at_one_minus(u) +
           log1p_exp(reciprocal_tail.at_one_minus(u));
  };

  // direct box measure: one fresh graded quadrature per box
  std::vector<double> stat(sched.max_depth + 1, kNegInf);
  bool diverges = false;
  for (int k = 1; k <= sched.max_depth; ++k) {
    auto box = graded_log_to_zero(density, u_of(k), {tol, 0.0, 60});
    diverges = diverges || box.diverging || !box.converged;
    stat[k] = k * std::log(2.0) + box.log_value;
  }
  return finish_scan("carleson_box", w, nullptr, {}, sched, stat, diverges);
}

ConditionReport check_ap(const Weight& w, const Weight& nu, double p,
                         const ScanSchedule& sched) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw DomainError("check_ap: need 1 < p < inf");
  const double pc = p / (p - 1.0);
  const double tol = w.quadrature_tolerance();

  auto second = segment_integrals(
      [&](double u) {
        return pc * (w.log_value_at_one_minus(u) -
                     nu.log_tail_at_one_minus(u) / p);
      },
      sched.max_depth, tol, true);

  std::vector<double> stat(sched.max_depth + 1, kNegInf);
  for (int k = 1; k <= sched.max_depth; ++k) {
    const double u = u_of(k);
    stat[k] = nu.log_tail_at_one_minus(u) / p + second.suffix[k] / pc -
              w.log_tail_at_one_minus(u);
  }
  return finish_scan("ap", w, &nu, {{"p", p}}, sched, stat,
                     second.tail_diverges);
}

}  // namespace homega
