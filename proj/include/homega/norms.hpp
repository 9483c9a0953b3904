#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>

#include "homega/operators.hpp"
#include "homega/scan.hpp"
#include "homega/weights.hpp"

// Function-space norms on the disc, estimated from circle averages on
// geometric radius grids.  Circle integrals use uniform-angle trapezoid
// sums (spectrally accurate for analytic integrands) with the angle count
// doubled until the value stabilizes.  Suprema over radii reuse the global
// stabilization protocol, so a norm can come back flagged divergent.

namespace homega {

class DiscFunction {
 public:
  explicit DiscFunction(TaylorCoeffs coeffs);
  explicit DiscFunction(std::function<std::complex<double>(std::complex<double>)> f);

  std::complex<double> operator()(std::complex<double> z) const;
  Eigen::ArrayXcd circle_values(double r, int M) const;

  bool has_series() const;
  const TaylorCoeffs& series() const;  // throws DomainError without one

  // Series derivative when available, otherwise central differences with a
  // step proportional to the distance to the boundary.
  DiscFunction derivative() const;

 private:
  std::shared_ptr<const TaylorCoeffs> coeffs_;
  std::function<std::complex<double>(std::complex<double>)> eval_;
};

struct NormOutcome {
  double value = 0.0;
  BoundVerdict flag = BoundVerdict::Bounded;  // Diverging: the scan still grew
};

// M_p(r, f): p-mean over the circle of radius r.
double integral_mean(const DiscFunction& f, double p, double r,
                     double tol = 1e-9, int min_angles = 64);

// max |f| over the circle grid with one Richardson refinement.
double sup_circle(const DiscFunction& f, double r, int min_angles = 64);

// sup of integral means over r_k = 1 - 2^{-k} (monotone in r).
NormOutcome hardy_norm(const DiscFunction& f, double p, int max_depth = 26);

// |f(0)| + sup (1-|z|^2)|f'(z)| over a polar grid.
NormOutcome bloch_norm(const DiscFunction& f, int max_depth = 18);

// (∫ M_p^p(r,f) 2r nu(r) dr)^{1/p}, the norm over the disc with normalized
// area measure.
NormOutcome bergman_norm(const DiscFunction& f, double p, const Weight& nu);

// Defining sum of the coefficient norm: sum |a_n|^p (n+1)^{p-2}.  This is
// the p-th power of the norm.
double hl_norm(const TaylorCoeffs& f, double p);

// (|f(0)|^p + ||f'||^p over the standard weight of order p-1)^{1/p}.
NormOutcome dirichlet_norm(const DiscFunction& f, double p);

// Dyadic-block form of the same quantity (p-th power): |f(0)|^p +
// sum_n 2^{-np} ||block_n(f')||_{H^p}^p, blocks over indices [2^n, 2^{n+1})
// with block 0 covering {0, 1}.
double dyadic_dirichlet_norm(const TaylorCoeffs& f, double p);

// (|f(0)|^p + ∫ M_q^p(r, f') (1-r)^alpha dr)^{1/p}.
NormOutcome mixed_norm(const DiscFunction& f, double p, double q, double alpha);

}  // namespace homega
