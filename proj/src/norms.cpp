#include "homega/norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "homega/errors.hpp"
#include "homega/logspace.hpp"
#include "homega/quadrature.hpp"

namespace homega {

// ---------------------------------------------------------------------------
// DiscFunction

DiscFunction::DiscFunction(TaylorCoeffs coeffs)
    : coeffs_(std::make_shared<TaylorCoeffs>(std::move(coeffs))) {}

DiscFunction::DiscFunction(
    std::function<std::complex<double>(std::complex<double>)> f)
    : eval_(std::move(f)) {}

std::complex<double> DiscFunction::operator()(std::complex<double> z) const {
  return coeffs_ ? coeffs_->eval(z) : eval_(z);
}

Eigen::ArrayXcd DiscFunction::circle_values(double r, int M) const {
  if (coeffs_) return coeffs_->eval_circle(r, M);
  Eigen::ArrayXcd out(M);
  const std::complex<double> i{0.0, 1.0};
  for (int k = 0; k < M; ++k)
    out[k] = eval_(r * std::exp(i * (2.0 * M_PI * k / M)));
  return out;
}

bool DiscFunction::has_series() const { return coeffs_ != nullptr; }

const TaylorCoeffs& DiscFunction::series() const {
  if (!coeffs_) throw DomainError("DiscFunction: no series representation");
  return *coeffs_;
}

DiscFunction DiscFunction::derivative() const {
  if (coeffs_) return DiscFunction(coeffs_->derivative());
  auto f = eval_;
  return DiscFunction([f](std::complex<double> z) {
    const double h = 1e-5 * std::max(1.0 - std::abs(z), 1e-6);
    return (f(z + h) - f(z - h)) / (2.0 * h);
  });
}

// ---------------------------------------------------------------------------
// Circle means

namespace {

int starting_angles(const DiscFunction& f, int min_angles) {
  int m = min_angles;
  if (f.has_series()) {
    const auto deg = f.series().degree();
    while (m < 2 * (deg + 1) && m < (1 << 18)) m *= 2;
  }
  return m;
}

double mean_power(const DiscFunction& f, double p, double r, int M) {
  return (f.circle_values(r, M).abs().pow(p)).mean();
}

}  // namespace

double integral_mean(const DiscFunction& f, double p, double r, double tol,
                     int min_angles) {
  if (!(p > 0.0)) throw DomainError("integral_mean: p must be positive");
  if (!(r >= 0.0) || !(r < 1.0)) throw DomainError("integral_mean: r in [0,1)");
  if (r == 0.0) return std::abs(f(0.0));
  int M = starting_angles(f, min_angles);
  double prev = mean_power(f, p, r, M);
  for (; M <= (1 << 21); ) {
    M *= 2;
    const double cur = mean_power(f, p, r, M);
    if (std::abs(cur - prev) <= tol * std::abs(cur) + 1e-300)
      return std::pow(cur, 1.0 / p);
    prev = cur;
  }
  throw NumericError("integral_mean: circle average did not stabilize");
}

double sup_circle(const DiscFunction& f, double r, int min_angles) {
  const int M = starting_angles(f, min_angles);
  const double m1 = f.circle_values(r, M).abs().maxCoeff();
  const double m2 = f.circle_values(r, 2 * M).abs().maxCoeff();
  return std::max(m2 + (m2 - m1) / 3.0, m2);
}

// ---------------------------------------------------------------------------
// Hardy / Bloch suprema

NormOutcome hardy_norm(const DiscFunction& f, double p, int max_depth) {
  NormOutcome out;
  double prev = std::abs(f(0.0));
  double value = prev;
  int fast = 0, flat = 0;
  std::vector<TraceLevel> trace;
  for (int k = 1; k <= max_depth; ++k) {
    const double r = 1.0 - std::ldexp(1.0, -k);
    const double m = integral_mean(f, p, r);
    value = std::max(value, m);
    trace.push_back({k, std::log(value)});
    if (prev > 0.0) {
      const double growth = m / prev - 1.0;
      fast = (growth > 0.25) ? fast + 1 : 0;
      flat = (std::abs(growth) < 1e-3) ? flat + 1 : 0;
      if (fast >= 3) {
        out.flag = BoundVerdict::Diverging;
        out.value = value;
        return out;
      }
      if (flat >= 2) {
        out.value = value;
        return out;
      }
    }
    prev = m;
  }
  out.value = value;
  const auto a = assess_sup_trace(trace);
  out.flag = (a.verdict == BoundVerdict::Inconclusive && a.last_change < 0.01)
                 ? BoundVerdict::Bounded
                 : a.verdict;
  return out;
}

NormOutcome bloch_norm(const DiscFunction& f, int max_depth) {
  NormOutcome out;
  const DiscFunction df = f.derivative();
  auto stat = [&](double r) {
    return (1.0 - r * r) * sup_circle(df, r, 128);
  };
  double sup = 0.0;
  for (double r = 0.0; r < 0.95; r += 0.1) sup = std::max(sup, stat(r));
  std::vector<TraceLevel> trace;
  double prev = sup;
  int fast = 0, flat = 0;
  for (int k = 1; k <= max_depth; ++k) {
    const double level = stat(1.0 - std::ldexp(1.0, -k));
    sup = std::max(sup, level);
    trace.push_back({k, std::log(sup)});
    const double growth = (prev > 0.0) ? level / prev - 1.0 : 0.0;
    fast = (growth > 0.25) ? fast + 1 : 0;
    flat = (std::abs(sup / std::max(prev, 1e-300) - 1.0) < 1e-4 && k > 4)
               ? flat + 1
               : 0;
    if (fast >= 3) {
      out.flag = BoundVerdict::Diverging;
      break;
    }
    if (flat >= 3) break;
    prev = std::max(sup, 1e-300);
  }
  out.value = std::abs(f(0.0)) + sup;
  if (out.flag != BoundVerdict::Diverging && !trace.empty()) {
    const auto a = assess_sup_trace(trace);
    if (a.verdict == BoundVerdict::Diverging) out.flag = a.verdict;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integrated norms

NormOutcome bergman_norm(const DiscFunction& f, double p, const Weight& nu) {
  if (!(p > 0.0)) throw DomainError("bergman_norm: p must be positive");
  auto g = [&](double u) {
    const double r = 1.0 - u;
    const double m = integral_mean(f, p, r, 1e-9);
    return std::pow(m, p) * 2.0 * r * nu.value_at_one_minus(u);
  };
  auto res = graded_to_one(g, 0.0, QuadOptions{1e-8, 0.0}, 120);
  NormOutcome out;
  out.value = std::pow(res.value, 1.0 / p);
  if (res.diverging) out.flag = BoundVerdict::Diverging;
  else if (!res.converged) out.flag = BoundVerdict::Inconclusive;
  return out;
}

double hl_norm(const TaylorCoeffs& f, double p) {
  if (!(p > 0.0)) throw DomainError("hl_norm: p must be positive");
  double acc = 0.0;
  for (Eigen::Index n = 0; n < f.c.size(); ++n)
    acc += std::pow(std::abs(f.c[n]), p) * std::pow(double(n + 1), p - 2.0);
  return acc;
}

NormOutcome dirichlet_norm(const DiscFunction& f, double p) {
  if (!(p > 0.0)) throw DomainError("dirichlet_norm: p must be positive");
  const NormOutcome d = bergman_norm(f.derivative(), p, Weight::standard(p - 1.0));
  NormOutcome out;
  out.value = std::pow(
      std::pow(std::abs(f(0.0)), p) + std::pow(d.value, p), 1.0 / p);
  out.flag = d.flag;
  return out;
}

double dyadic_dirichlet_norm(const TaylorCoeffs& f, double p) {
  if (!(p > 1.0)) throw DomainError("dyadic_dirichlet_norm: p must exceed 1");
  const TaylorCoeffs df = f.derivative();
  double acc = std::pow(f.c.size() ? std::abs(f.c[0]) : 0.0, p);
  for (int n = 0;; ++n) {
    const Eigen::Index lo = (n == 0) ? 0 : (Eigen::Index(1) << n);
    const Eigen::Index hi = Eigen::Index(1) << (n + 1);  // exclusive
    if (lo >= df.c.size()) break;
    TaylorCoeffs block;
    block.c = Eigen::ArrayXcd::Zero(std::min<Eigen::Index>(hi, df.c.size()));
    bool any = false;
    for (Eigen::Index k = lo; k < block.c.size(); ++k) {
      block.c[k] = df.c[k];
      any = any || std::abs(df.c[k]) > 0.0;
    }
    if (!any) continue;
    const double bn = hardy_norm(DiscFunction(block), p).value;
    acc += std::exp2(-double(n) * p) * std::pow(bn, p);
  }
  return acc;
}

NormOutcome mixed_norm(const DiscFunction& f, double p, double q, double alpha) {
  if (!(p > 0.0) || !(q > 0.0) || !(alpha > 0.0))
    throw DomainError("mixed_norm: p, q, alpha must be positive");
  const DiscFunction df = f.derivative();
  auto g = [&](double u) {
    const double m = integral_mean(df, q, 1.0 - u, 1e-9);
    return std::pow(m, p) * std::pow(u, alpha);
  };
  auto res = graded_to_one(g, 0.0, QuadOptions{1e-8, 0.0}, 120);
  NormOutcome out;
  out.value =
      std::pow(std::pow(std::abs(f(0.0)), p) + res.value, 1.0 / p);
  if (res.diverging) out.flag = BoundVerdict::Diverging;
  else if (!res.converged) out.flag = BoundVerdict::Inconclusive;
  return out;
}

}  // namespace homega
