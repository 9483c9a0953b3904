#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>

#include "homega/weights.hpp"

// Power-series evaluation of the reproducing kernel of the weighted
// square-integrable space on the disc and of its averaged and derivative
// kernels, with certified truncation error.  Coefficients are reciprocals
// of odd weight moments; for an upper doubling weight they grow at most
// polynomially, which is what makes the geometric tail bound computable.
// A weight whose coefficients grow faster aborts evaluation.

namespace homega {

enum class KernelKind {
  Reproducing,  // sum (t z)^n / (2 w_{2n+1})
  Averaged,     // sum (t z)^n / (2 (n+1) w_{2n+1})   — the operator kernel
  Derivative,   // d/dz of Averaged
};

struct KernelOptions {
  double max_abs_u = 0.999;       // refuse |t z| beyond this
  long max_terms = 1'000'000;
  long exact_moment_terms = 4096; // moments beyond use the smooth curve
};

class KernelSeries {
 public:
  explicit KernelSeries(Weight w, KernelOptions opt = {});

  std::complex<double> evaluate(KernelKind kind, double t,
                                std::complex<double> z,
                                double tol = 1e-10) const;

  std::complex<double> reproducing(double t, std::complex<double> z,
                                   double tol = 1e-10) const {
    return evaluate(KernelKind::Reproducing, t, z, tol);
  }
  std::complex<double> averaged(double t, std::complex<double> z,
                                double tol = 1e-10) const {
    return evaluate(KernelKind::Averaged, t, z, tol);
  }
  std::complex<double> derivative(double t, std::complex<double> z,
                                  double tol = 1e-10) const {
    return evaluate(KernelKind::Derivative, t, z, tol);
  }

  // z-power coefficients of z -> kernel(t, z), truncated so the discarded
  // tail is below tol for |z| <= radius.  Real and positive.
  Eigen::ArrayXd scaled_coeffs(KernelKind kind, double t, double radius,
                               double tol = 1e-10) const;

  const Weight& weight() const;
  const KernelOptions& options() const;

 private:
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// Convenience single-call forms.
std::complex<double> bergman_kernel(const Weight& w, double t,
                                    std::complex<double> z, double tol = 1e-10);
std::complex<double> k_kernel(const Weight& w, double t, std::complex<double> z,
                              double tol = 1e-10);
std::complex<double> g_kernel(const Weight& w, double t, std::complex<double> z,
                              double tol = 1e-10);

// Closed-form comparison quantities for the kernel growth estimates.
// All integrals run in log scale over graded panels.
double radial_k_estimate(const Weight& w, double s, double t);   // 1 + ∫ dx/(tail(x)(1-x)) over [0, st]
double m1_k_estimate(const Weight& w, double rho, double t);     // 1 + ∫ ds/tail(s) over [0, rho t]
double mq_g_estimate(const Weight& w, double q, double r, double t);
// t^q (1 + ∫ dx/(tail(x)^q (1-x)^q) over [0, rt])

}  // namespace homega
