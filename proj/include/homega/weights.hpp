#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homega/reports.hpp"
#include "homega/scan.hpp"

// Radial weights on [0,1): evaluation, tail integrals, moments, and the
// doubling-class scans.  A Weight is an immutable value; tails and moments
// are cached behind it and safe for concurrent readers.
//
// Numerical conventions:
//  * everything near r = 1 is parametrised by u = 1 - r,
//  * tails and moments are computed and cached as logarithms,
//  * quadrature is graded dyadically toward the endpoint.

namespace homega {

enum class WeightFamily {
  Constant,          // w(r) = c
  Standard,          // w(r) = (a+1)(1-r^2)^a, a > -1
  PowerOneMinus,     // w(r) = (1-r)^g, g > -1
  Logarithmic,       // w(r) = (1-r)^a log(e/(1-r))^b
  ExponentialDecay,  // w(r) = exp(-c/(1-r)^k), c,k > 0
  Tabulated,         // piecewise linear through samples, constant beyond
};

class Weight {
 public:
  static Weight constant(double c);
  static Weight standard(double alpha);
  static Weight power_one_minus(double gamma);
  static Weight logarithmic(double alpha, double beta);
  static Weight exponential_decay(double c, double k);
  static Weight tabulated(Eigen::ArrayXd nodes, Eigen::ArrayXd values);

  // Pointwise evaluation; throws DomainError outside [0,1).
  double operator()(double r) const;
  // w(1-u) for 0 < u <= 1, evaluated without forming 1-u-1 cancellations.
  double value_at_one_minus(double u) const;
  double log_value_at_one_minus(double u) const;

  // Tail integral over [r,1); exact formula when the family has one,
  // otherwise cached graded quadrature.
  double tail(double r) const;
  double log_tail(double r) const;
  double log_tail_at_one_minus(double u) const;

  // Moment of order x >= 0; cached in log scale.  x beyond 1e8 raises
  // ResolutionError.
  double moment(double x) const;
  double log_moment(double x) const;

  double mass() const { return tail(0.0); }

  WeightFamily family() const;
  const std::vector<double>& params() const;
  std::string description() const;  // mini-language spec, e.g. "standard:0.5"

  bool has_exact_tail() const;
  bool has_exact_moment() const;

  double quadrature_tolerance() const;
  Weight with_tolerance(double rel_tol) const;

  struct State;  // defined in weights.cpp

 private:
  explicit Weight(std::shared_ptr<State> s) : state_(std::move(s)) {}
  std::shared_ptr<State> state_;
};

// Weight mini-language: "constant:1", "standard:0.5", "power1m:-0.5",
// "log:0,1", "expdecay:1,1", "tabulated:file.csv".
Weight parse_weight(std::string_view spec);

// Key-value config ("family=standard alpha=0.5", whitespace or newline
// separated; "family=tabulated file=weight.csv").
Weight weight_from_config(const std::string& text);

// CSV with header "r,omega" and strictly increasing r in [0,1).
Weight load_tabulated_csv(const std::string& path);

// The family matrix used by tests, scans and the acceptance suite.
std::vector<Weight> built_in_weights();
std::vector<Weight> built_in_dhat_weights();

// ---------------------------------------------------------------------------
// Classification into the doubling classes.

struct ClassWitness {
  double grid_point = 0.0;  // r (or x for moment scans) achieving the worst ratio
  double log_ratio = 0.0;
  double ratio = 0.0;  // exp(log_ratio); +inf if it overflows
};

struct ClassReport {
  std::string class_id;  // "dhat" | "dhat-moments" | "dcheck" | "m"
  std::string weight;
  Verdict verdict = Verdict::Inconclusive;
  ClassWitness witness;
  std::vector<TraceLevel> trace;         // (grid size, log sup/inf statistic)
  std::optional<double> constant_k;      // the K that certified dcheck/M
};

// Upper doubling via the tail ratio on r_k = 1 - 2^{-k}.
ClassReport classify_dhat(const Weight& w, const ScanSchedule& sched = {});

// Upper doubling via the moment ratio on n = 1,2,4,...,n_max.
ClassReport classify_dhat_moments(const Weight& w, int n_max = 1 << 16);

// Lower doubling: some K in `ks` keeps the tail ratio above 1.
ClassReport classify_dcheck(const Weight& w,
                            const std::vector<double>& ks = {2, 4, 8},
                            const ScanSchedule& sched = {});

// Moment-decay class: some K keeps the moment ratio above 1 for x >= 1.
ClassReport classify_m(const Weight& w,
                       const std::vector<double>& ks = {2, 4, 8},
                       int x_max_log2 = 16);

std::string to_json(const ClassReport&);

inline bool is_member(const ClassReport& r) { return r.verdict == Verdict::Member; }
bool in_dhat(const Weight& w);
bool in_doubling(const Weight& w);  // upper and lower doubling both hold

// Ratio band of moment(x) against tail(1 - 1/x) over a geometric x-grid;
// bounded stable band characterises upper doubling.
RatioReport moment_tail_equivalence(const Weight& w, double x_max = 1e4);

// Least-squares estimate of the tail's doubling exponent (the power beta
// with tail(r) ~ (1-r)^beta at the deep end of the grid).  Metadata only.
double doubling_exponent_estimate(const Weight& w);

}  // namespace homega
