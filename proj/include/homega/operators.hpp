#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "homega/kernels.hpp"
#include "homega/weights.hpp"

// The Hilbert-type operator induced by a radial weight: integrate a function
// on [0,1) against the averaged kernel and the weight.  Functions on [0,1)
// are piecewise-linear samples on a grid graded toward 1, extended by
// constants beyond the sampled range.

namespace homega {

struct RadialGridFunction {
  Eigen::ArrayXd nodes;   // strictly increasing in [0,1)
  Eigen::ArrayXd values;  // finite reals

  double operator()(double t) const;

  // |f|, with nodes inserted at the sign changes so the interpolant of the
  // result is exactly the absolute value of the interpolant.
  RadialGridFunction absolute() const;

  // {0} followed by 1 - 2^{-j/per_octave}; resolves everything an
  // integrable weight can see near 1.
  static Eigen::ArrayXd graded_nodes(int depth = 40, int per_octave = 8);
  static RadialGridFunction sample(const std::function<double(double)>& f,
                                   Eigen::ArrayXd nodes);
  static RadialGridFunction constant(double c);
};

struct TaylorCoeffs {
  Eigen::ArrayXcd c;

  std::complex<double> eval(std::complex<double> z) const;
  Eigen::ArrayXcd eval_circle(double r, int M) const;  // values at r e^{2πik/M}
  TaylorCoeffs derivative() const;
  Eigen::Index degree() const { return c.size() ? c.size() - 1 : 0; }
};

// Pointwise application: ∫ f(t) K_t(z) w(t) dt with estimated error <= tol.
std::complex<double> apply_H_point(const KernelSeries& ks,
                                   const RadialGridFunction& f,
                                   std::complex<double> z, double tol = 1e-10);
std::complex<double> apply_H_point(const Weight& w, const RadialGridFunction& f,
                                   std::complex<double> z, double tol = 1e-10);

// Coefficientwise application: a_n = (∫ f t^n w dt) / (2 (n+1) w_{2n+1}).
TaylorCoeffs apply_H_coeffs(const Weight& w, const RadialGridFunction& f, int N);

// Sublinear variant: the operator applied to |f|.
std::complex<double> apply_H_sublinear(const Weight& w,
                                       const RadialGridFunction& f,
                                       std::complex<double> z,
                                       double tol = 1e-10);

// Reference path for the unit weight: ∫ f(t)/(1-tz) dt by direct quadrature
// of the closed-form kernel.
std::complex<double> hilbert_classical_oracle(const RadialGridFunction& f,
                                              std::complex<double> z,
                                              double tol = 1e-12);

// Unit-norm Hardy test family (1-a^2)/(1-at)^2 sampled on the graded grid.
RadialGridFunction test_function_fa(double a);
RadialGridFunction test_function_fa(double a, const Eigen::ArrayXd& nodes);

// Indicator-cut power family (w(t)/nu_tail(t))^{p'/p} on [r,1).
RadialGridFunction test_function_phir(const Weight& w, const Weight& nu,
                                      double p, double r);
RadialGridFunction test_function_phir(const Weight& w, const Weight& nu,
                                      double p, double r,
                                      const Eigen::ArrayXd& nodes);

}  // namespace homega
