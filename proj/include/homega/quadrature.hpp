#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <type_traits>
#include <vector>

#include "homega/errors.hpp"
#include "homega/logspace.hpp"

// Panel-based Gauss-Legendre integration.  Two flavours:
//   * adaptive(): signed/complex integrands, embedded GL15/GL31 error
//     estimate, splits the worst panel until the global budget is met.
//   * adaptive_log(): nonnegative integrands supplied as log(f); all
//     accumulation happens in log scale so values spanning thousands of
//     orders of magnitude are fine.
// Integrals toward r = 1 are driven through dyadic panels in u = 1 - r;
// integrands receive u directly so the endpoint distance stays exact in
// double precision.

namespace homega {

struct GaussRule {
  Eigen::ArrayXd nodes;    // on (-1, 1)
  Eigen::ArrayXd weights;  // sum to 2
};

// Cached Golub-Welsch rule (Jacobi-matrix eigenvalues, Newton-polished).
const GaussRule& gauss_legendre(int n);

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_splits = 2000;
};

struct LogQuadResult {
  double log_value = kNegInf;
  bool converged = true;
};

template <class Scalar>
struct AdaptiveResult {
  Scalar value{};
  double error = 0.0;
  bool converged = true;
};

namespace detail {

template <class F>
auto gl_panel(F&& f, double a, double b, const GaussRule& rule) {
  using Scalar = std::invoke_result_t<F, double>;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Scalar acc{};
  for (int i = 0; i < rule.nodes.size(); ++i) {
    acc += Scalar(rule.weights[i]) * f(mid + half * rule.nodes[i]);
  }
  return Scalar(half) * acc;
}

template <class LogF>
double gl_panel_log(LogF&& lf, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  LogAccumulator acc;
  for (int i = 0; i < rule.nodes.size(); ++i) {
    acc.add(lf(mid + half * rule.nodes[i]) + std::log(half * rule.weights[i]));
  }
  return acc.log_total();
}

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

}  // namespace detail

// Adaptive integration of a signed or complex integrand over [a, b].
template <class F>
auto adaptive(F&& f, double a, double b, const QuadOptions& opt = {}) {
  using Scalar = std::invoke_result_t<F, double>;
  const GaussRule& lo = gauss_legendre(15);
  const GaussRule& hi = gauss_legendre(31);

  struct Seg {
    double a, b, err;
    Scalar value;
  };
  auto make = [&](double sa, double sb) {
    Scalar coarse = detail::gl_panel(f, sa, sb, lo);
    Scalar fine = detail::gl_panel(f, sa, sb, hi);
    return Seg{sa, sb, detail::magnitude(fine - coarse), fine};
  };

  std::vector<Seg> segs{make(a, b)};
  for (int splits = 0; splits < opt.max_splits; ++splits) {
    Scalar total{};
    double err = 0.0;
    size_t worst = 0;
    for (size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].value;
      err += segs[i].err;
      if (segs[i].err > segs[worst].err) worst = i;
    }
    const double budget =
        std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total));
    if (err <= budget) return AdaptiveResult<Scalar>{total, err, true};
    const Seg w = segs[worst];
    const double m = 0.5 * (w.a + w.b);
    segs[worst] = make(w.a, m);
    segs.push_back(make(m, w.b));
  }
  Scalar total{};
  double err = 0.0;
  for (const Seg& s : segs) {
    total += s.value;
    err += s.err;
  }
  const double budget =
      std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total));
  return AdaptiveResult<Scalar>{total, err, err <= budget};
}

// Adaptive integration of a nonnegative integrand given by its logarithm.
template <class LogF>
LogQuadResult adaptive_log(LogF&& lf, double a, double b,
                           const QuadOptions& opt = {}) {
  const GaussRule& lo = gauss_legendre(15);
  const GaussRule& hi = gauss_legendre(31);

  struct Seg {
    double a, b;
    double log_err;  // log of absolute error estimate
    double log_value;
  };
  auto make = [&](double sa, double sb) {
    double coarse = detail::gl_panel_log(lf, sa, sb, lo);
    double fine = detail::gl_panel_log(lf, sa, sb, hi);
    double rel = std::abs(std::expm1(coarse - fine));
    double log_err =
        (rel > 0 && fine > kNegInf) ? fine + std::log(rel) : kNegInf;
    return Seg{sa, sb, log_err, fine};
  };

  std::vector<Seg> segs{make(a, b)};
  for (int splits = 0; splits <= opt.max_splits; ++splits) {
    LogAccumulator total, err;
    size_t worst = 0;
    for (size_t i = 0; i < segs.size(); ++i) {
      total.add(segs[i].log_value);
      err.add(segs[i].log_err);
      if (segs[i].log_err > segs[worst].log_err) worst = i;
    }
    const double log_total = total.log_total();
    const double log_budget = log_total + std::log(opt.rel_tol);
    const bool done = err.log_total() <= log_budget || log_total == kNegInf;
    if (done || splits == opt.max_splits) return {log_total, done};
    const Seg w = segs[worst];
    const double m = 0.5 * (w.a + w.b);
    segs[worst] = make(w.a, m);
    segs.push_back(make(m, w.b));
  }
  return {kNegInf, true};  // unreachable
}

struct GradedLogResult {
  double log_value = kNegInf;
  bool converged = true;
  bool diverging = false;
  int panels = 0;
};

// ∫_0^U g(u) du for g >= 0 given as log g, with dyadic panels [U/2^{j+1},
// U/2^j] graded toward u = 0.  Stops once panel contributions are
// negligible; flags sustained growth toward the endpoint.
template <class LogF>
GradedLogResult graded_log_to_zero(LogF&& lf, double U,
                                   const QuadOptions& opt = {},
                                   int max_panels = 1020) {
  GradedLogResult out;
  if (U <= 0.0) return out;
  LogAccumulator acc;
  double hi = U;
  double prev = kNegInf;
  int rising = 0, negligible = 0;
  QuadOptions popt = opt;
  popt.max_splits = 60;
  for (int j = 0; j < max_panels; ++j) {
    const double lo = 0.5 * hi;
    const double contrib = adaptive_log(lf, lo, hi, popt).log_value;
    acc.add(contrib);
    ++out.panels;
    const double total = acc.log_total();
    if (j > 0 && contrib > prev + 1e-12) {
      if (++rising >= 40) {
        out.diverging = true;
        out.converged = false;
        out.log_value = total;
        return out;
      }
    } else {
      rising = 0;
    }
    if (total > kNegInf && contrib < total - 45.0) {
      if (++negligible >= 2) {
        out.log_value = total;
        return out;
      }
    } else {
      negligible = 0;
    }
    prev = contrib;
    hi = lo;
  }
  out.log_value = acc.log_total();
  out.converged = false;
  return out;
}

// ∫_lo^∞ g(x) dx for g >= 0 given as log g, with doubling panels upward
// from lo until contributions fade (decaying integrands only).
template <class LogF>
GradedLogResult graded_log_ascending(LogF&& lf, double lo,
                                     const QuadOptions& opt = {},
                                     int max_doublings = 80) {
  GradedLogResult out;
  LogAccumulator acc;
  QuadOptions popt = opt;
  popt.max_splits = 60;
  double a = std::max(lo, 1e-300);
  int negligible = 0;
  for (int m = 0; m < max_doublings; ++m) {
    const double b = 2.0 * a;
    const double contrib = adaptive_log(lf, a, b, popt).log_value;
    acc.add(contrib);
    ++out.panels;
    const double total = acc.log_total();
    if (total > kNegInf && contrib < total - 45.0) {
      if (++negligible >= 2) {
        out.log_value = total;
        return out;
      }
    } else {
      negligible = 0;
    }
    a = b;
  }
  out.log_value = acc.log_total();
  out.converged = false;
  return out;
}

// ∫_lo^hi g(u) du for g >= 0 given as log g, with panels geometric from the
// lower endpoint (integrand mass sits at u = lo).
template <class LogF>
GradedLogResult graded_log_from(LogF&& lf, double lo, double hi,
                                const QuadOptions& opt = {}) {
  GradedLogResult out;
  if (!(hi > lo)) return out;
  LogAccumulator acc;
  QuadOptions popt = opt;
  popt.max_splits = 60;
  double a = lo;
  while (a < hi) {
    double b = (a > 0.0) ? std::min(hi, 2.0 * a) : hi;
    acc.add(adaptive_log(lf, a, b, popt).log_value);
    ++out.panels;
    a = b;
  }
  out.log_value = acc.log_total();
  return out;
}

template <class Scalar>
struct GradedResult {
  Scalar value{};
  bool converged = true;
  bool diverging = false;
};

// ∫_a^1 f(r) dr with the callable receiving u = 1 - r.  Panels are dyadic
// in u toward r = 1; signed/complex integrands; sustained non-decay of
// panel contributions is flagged as divergence.
template <class F>
auto graded_to_one(F&& f_of_u, double a, const QuadOptions& opt = {},
                   int max_panels = 400) {
  using Scalar = std::invoke_result_t<F, double>;
  GradedResult<Scalar> out;
  const double U = 1.0 - a;
  if (U <= 0.0) return out;
  QuadOptions popt = opt;
  popt.max_splits = 200;
  Scalar total{};
  double hi = U;
  double prev_mag = -1.0;
  int rising = 0, negligible = 0;
  for (int j = 0; j < max_panels; ++j) {
    const double lo = 0.5 * hi;
    const auto piece = adaptive(f_of_u, lo, hi, popt);
    total += piece.value;
    const double mag = detail::magnitude(piece.value);
    if (prev_mag >= 0.0 && mag >= 0.95 * prev_mag && mag > 0) {
      if (++rising >= 8) {
        out.value = total;
        out.converged = false;
        out.diverging = true;
        return out;
      }
    } else {
      rising = 0;
    }
    if (mag <= opt.rel_tol * detail::magnitude(total) + opt.abs_tol) {
      if (++negligible >= 2) {
        out.value = total;
        return out;
      }
    } else {
      negligible = 0;
    }
    prev_mag = mag;
    hi = lo;
  }
  out.value = total;
  out.converged = false;
  return out;
}

// Composite adaptive integration across explicit breakpoints.
template <class F>
auto adaptive_over(F&& f, const std::vector<double>& breaks,
                   const QuadOptions& opt = {}) {
  using Scalar = std::invoke_result_t<F, double>;
  AdaptiveResult<Scalar> out;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto piece = adaptive(f, breaks[i], breaks[i + 1], opt);
    out.value += piece.value;
    out.error += piece.error;
    out.converged = out.converged && piece.converged;
  }
  return out;
}

}  // namespace homega
