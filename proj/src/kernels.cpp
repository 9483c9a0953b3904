#include "homega/kernels.hpp"

#include <cmath>
#include <functional>
#include <mutex>
#include <vector>

#include "homega/errors.hpp"
#include "homega/interp.hpp"
#include "homega/logspace.hpp"
#include "homega/quadrature.hpp"

namespace homega {

namespace {

// Octave subdivision of the smooth log-moment curve used beyond the exact
// range.  The curve is only consumed by deep scans whose tolerances are in
// the percent range; oracle-grade evaluations stay on exact moments.
constexpr int kCurveNodesPerOctave = 12;

// One octave of coefficient growth above this exponent means the weight
// cannot be upper doubling; abort instead of emitting garbage.
constexpr double kGrowthAbortExponent = 40.0;

}  // namespace

struct KernelSeries::Cache {
  Weight w;
  KernelOptions opt;

  mutable std::vector<double> log_b;  // log(1 / (2 w_{2m+1}))
  mutable PchipCurve curve;           // log-moment vs log1p(x)
  mutable double curve_s_max = 0.0;
  mutable std::mutex mu;

  Cache(Weight weight, KernelOptions o) : w(std::move(weight)), opt(o) {}

  double log_odd_moment(double m) const {
    const double x = 2.0 * m + 1.0;
    if (m <= double(opt.exact_moment_terms)) return w.log_moment(x);
    const double s = std::log1p(x);
    const double s_cap = std::log1p(9.9e7);
    if (s > s_cap)
      throw ResolutionError("kernel: coefficient index beyond moment range");
    if (curve.empty() || s > curve_s_max) {
      const double target =
          std::min(std::max(s + 0.5, 2.0 * curve_s_max + 1.0), s_cap);
      const int n = int(target / (std::log(2.0) / kCurveNodesPerOctave)) + 2;
      Eigen::ArrayXd xs(n), ys(n);
      for (int i = 0; i < n; ++i) {
        const double si = target * double(i) / double(n - 1);
        xs[i] = si;
        ys[i] = w.log_moment(std::expm1(si));
      }
      curve = PchipCurve(xs, ys);
      curve_s_max = target;
    }
    return curve(s);
  }

  void ensure_terms(long n) const {
    std::lock_guard<std::mutex> lock(mu);
    const long have = long(log_b.size());
    if (have > n) return;
    log_b.resize(n + 1);
    for (long m = have; m <= n; ++m) {
      log_b[m] = -std::log(2.0) - log_odd_moment(double(m));
      if (m >= 64 && (m & (m - 1)) == 0) {  // powers of two
        const double octave = log_b[m] - log_b[m / 2];
        if (octave > kGrowthAbortExponent * std::log(2.0))
          throw KernelGrowthError(
              "kernel coefficients grow superpolynomially for weight " +
              w.description() + "; the weight is not upper doubling");
      }
    }
  }

  // z-power coefficient of the requested kernel kind, as a logarithm plus
  // the t-power bookkeeping handled by the caller.
  double log_coeff(KernelKind kind, long m, double log_t) const {
    switch (kind) {
      case KernelKind::Reproducing:
        return log_b[m] + (m ? m * log_t : 0.0);
      case KernelKind::Averaged:
        return log_b[m] - std::log(double(m + 1)) + (m ? m * log_t : 0.0);
      case KernelKind::Derivative:
        return log_b[m + 1] + std::log(double(m + 1)) -
               std::log(double(m + 2)) + (m + 1) * log_t;
    }
    return kNegInf;
  }
};

KernelSeries::KernelSeries(Weight w, KernelOptions opt)
    : cache_(std::make_shared<Cache>(std::move(w), opt)) {}

const Weight& KernelSeries::weight() const { return cache_->w; }
const KernelOptions& KernelSeries::options() const { return cache_->opt; }

std::complex<double> KernelSeries::evaluate(KernelKind kind, double t,
                                            std::complex<double> z,
                                            double tol) const {
  if (!(t >= 0.0) || !(t < 1.0))
    throw DomainError("kernel: t must lie in [0,1)");
  const double az = std::abs(z);
  const double au = t * az;
  if (!(au < 1.0)) throw DomainError("kernel: need t|z| < 1");
  if (au > cache_->opt.max_abs_u)
    throw TruncationBudgetError(
        "kernel: |t z| = " + std::to_string(au) +
            " beyond the certified evaluation range " +
            std::to_string(cache_->opt.max_abs_u),
        kPosInf);
  if (t == 0.0 && kind == KernelKind::Derivative) return 0.0;

  const double log_t = std::log(t);
  const long block = 64;
  long have = 0;
  std::complex<double> sum = 0.0;
  std::complex<double> zp = 1.0;
  double azp = 1.0;  // |z|^m, in sync with the loop index
  double prev_log_a = kPosInf;
  double win_cur = 0.0, win_prev = 0.0;  // trailing coefficient-ratio maxima
  long win_count = 0;

  for (long m = 0;; ++m) {
    if (m + 1 >= have) {
      have = std::min<long>(m + block, cache_->opt.max_terms + 2);
      cache_->ensure_terms(have + 1);  // +1: Derivative reads b_{m+1}
    }
    const double log_a = cache_->log_coeff(kind, m, log_t);
    const double a = std::exp(log_a);
    sum += a * zp;

    if (m > 0) {
      const double ratio = std::exp(log_a - prev_log_a);
      if (win_count % 16 == 0) {
        win_prev = win_cur;
        win_cur = ratio;
      } else {
        win_cur = std::max(win_cur, ratio);
      }
      ++win_count;
    }
    prev_log_a = log_a;

    if (m >= 24 && (m % 8 == 0)) {
      const double q = az * std::max({win_cur, win_prev, 1.0});
      if (q < 0.99999) {
        const double tail = a * azp * q / (1.0 - q);
        if (tail <= std::max(tol, 1e-15 * std::abs(sum))) return sum;
      }
    }
    if (m >= cache_->opt.max_terms) {
      const double q = az * std::max({win_cur, win_prev, 1.0});
      const double tail = (q < 1.0) ? a * azp * q / (1.0 - q) : kPosInf;
      throw TruncationBudgetError(
          "kernel: term budget exhausted at |t z| = " + std::to_string(au),
          tail);
    }
    zp *= z;
    azp *= az;
  }
}

Eigen::ArrayXd KernelSeries::scaled_coeffs(KernelKind kind, double t,
                                           double radius, double tol) const {
  if (!(t >= 0.0) || !(t < 1.0))
    throw DomainError("kernel: t must lie in [0,1)");
  if (!(radius >= 0.0) || t * radius > cache_->opt.max_abs_u)
    throw TruncationBudgetError("kernel: radius beyond certified range",
                                kPosInf);
  if (t == 0.0) {
    if (kind == KernelKind::Derivative) return Eigen::ArrayXd::Zero(1);
    cache_->ensure_terms(2);
    Eigen::ArrayXd out(1);
    out[0] = std::exp(cache_->log_coeff(kind, 0, 0.0));
    return out;
  }
  const double log_t = std::log(t);
  std::vector<double> coeffs;
  double rp = 1.0;
  double prev_log_a = kPosInf;
  double win_cur = 0.0, win_prev = 0.0;
  long win_count = 0;
  for (long m = 0;; ++m) {
    cache_->ensure_terms(m + 2);
    const double log_a = cache_->log_coeff(kind, m, log_t);
    const double a = std::exp(log_a);
    coeffs.push_back(a);
    if (m > 0) {
      const double ratio = std::exp(log_a - prev_log_a);
      if (win_count % 16 == 0) {
        win_prev = win_cur;
        win_cur = ratio;
      } else {
        win_cur = std::max(win_cur, ratio);
      }
      ++win_count;
    }
    prev_log_a = log_a;
    if (m >= 24 && (m % 8 == 0)) {
      const double q = radius * std::max({win_cur, win_prev, 1.0});
      if (q < 0.99999 && a * rp * q / (1.0 - q) <= tol) break;
    }
    rp *= radius;
    if (m >= cache_->opt.max_terms)
      throw TruncationBudgetError("kernel: coefficient budget exhausted",
                                  kPosInf);
  }
  return Eigen::Map<Eigen::ArrayXd>(coeffs.data(), coeffs.size());
}

std::complex<double> bergman_kernel(const Weight& w, double t,
                                    std::complex<double> z, double tol) {
  return KernelSeries(w).reproducing(t, z, tol);
}

std::complex<double> k_kernel(const Weight& w, double t, std::complex<double> z,
                              double tol) {
  return KernelSeries(w).averaged(t, z, tol);
}

std::complex<double> g_kernel(const Weight& w, double t, std::complex<double> z,
                              double tol) {
  return KernelSeries(w).derivative(t, z, tol);
}

// ---------------------------------------------------------------------------
// Growth estimates

namespace {

double graded_estimate(const Weight& w, double upper,
                       const std::function<double(double)>& log_integrand) {
  if (upper <= 0.0) return 0.0;
  const auto res = graded_log_from(log_integrand, 1.0 - upper, 1.0,
                                   {w.quadrature_tolerance(), 0.0, 200});
  return std::exp(res.log_value);
}

}  // namespace

double radial_k_estimate(const Weight& w, double s, double t) {
  if (!(s >= 0.0) || !(s < 1.0) || !(t >= 0.0) || !(t < 1.0))
    throw DomainError("radial_k_estimate: s, t must lie in [0,1)");
  const double st = s * t;
  return 1.0 + graded_estimate(w, st, [&](double u) {
           return -w.log_tail_at_one_minus(u) - std::log(u);
         });
}

double m1_k_estimate(const Weight& w, double rho, double t) {
  if (!(rho >= 0.0) || !(rho < 1.0) || !(t >= 0.0) || !(t < 1.0))
    throw DomainError("m1_k_estimate: rho, t must lie in [0,1)");
  const double x = rho * t;
  return 1.0 + graded_estimate(w, x, [&](double u) {
           return -w.log_tail_at_one_minus(u);
         });
}

double mq_g_estimate(const Weight& w, double q, double r, double t) {
  if (!(q > 0.0)) throw DomainError("mq_g_estimate: q must be positive");
  if (!(r >= 0.0) || !(r < 1.0) || !(t >= 0.0) || !(t < 1.0))
    throw DomainError("mq_g_estimate: r, t must lie in [0,1)");
  const double x = r * t;
  const double integral = graded_estimate(w, x, [&](double u) {
    return -q * (w.log_tail_at_one_minus(u) + std::log(u));
  });
  return std::pow(t, q) * (1.0 + integral);
}

}  // namespace homega
