#include "homega/operators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "homega/errors.hpp"
#include "homega/quadrature.hpp"

namespace homega {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

// ---------------------------------------------------------------------------
// RadialGridFunction

double RadialGridFunction::operator()(double t) const {
  const auto n = nodes.size();
  if (n == 0) throw DomainError("grid function has no nodes");
  if (t <= nodes[0]) return values[0];
  if (t >= nodes[n - 1]) return values[n - 1];
  const double* begin = nodes.data();
  auto i = std::upper_bound(begin, begin + n, t) - begin - 1;
  const double s = (t - nodes[i]) / (nodes[i + 1] - nodes[i]);
  return values[i] * (1.0 - s) + values[i + 1] * s;
}

RadialGridFunction RadialGridFunction::absolute() const {
  std::vector<double> ns, vs;
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    if (i > 0 && values[i - 1] * values[i] < 0.0) {
      // sign change: insert the crossing so |interpolant| stays piecewise
      // linear on the refined grid
      const double s = values[i - 1] / (values[i - 1] - values[i]);
      ns.push_back(nodes[i - 1] + s * (nodes[i] - nodes[i - 1]));
      vs.push_back(0.0);
    }
    ns.push_back(nodes[i]);
    vs.push_back(std::abs(values[i]));
  }
  RadialGridFunction out;
  out.nodes = Eigen::Map<Eigen::ArrayXd>(ns.data(), ns.size());
  out.values = Eigen::Map<Eigen::ArrayXd>(vs.data(), vs.size());
  return out;
}

Eigen::ArrayXd RadialGridFunction::graded_nodes(int depth, int per_octave) {
  const int m = depth * per_octave;
  Eigen::ArrayXd out(m + 1);
  out[0] = 0.0;
  for (int j = 1; j <= m; ++j)
    out[j] = 1.0 - std::exp2(-double(j) / per_octave);
  return out;
}

RadialGridFunction RadialGridFunction::sample(
    const std::function<double(double)>& f, Eigen::ArrayXd nodes) {
  RadialGridFunction out;
  out.values.resize(nodes.size());
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    out.values[i] = f(nodes[i]);
    if (!std::isfinite(out.values[i]))
      throw NumericError("grid function sample is not finite");
  }
  out.nodes = std::move(nodes);
  return out;
}

RadialGridFunction RadialGridFunction::constant(double c) {
  RadialGridFunction out;
  out.nodes = Eigen::ArrayXd::LinSpaced(2, 0.0, 0.5);
  out.values = Eigen::ArrayXd::Constant(2, c);
  return out;
}

// ---------------------------------------------------------------------------
// TaylorCoeffs

std::complex<double> TaylorCoeffs::eval(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) acc = acc * z + c[i];
  return acc;
}

Eigen::ArrayXcd TaylorCoeffs::eval_circle(double r, int M) const {
  Eigen::ArrayXd theta =
      Eigen::ArrayXd::LinSpaced(M, 0.0, 2.0 * M_PI * (M - 1) / M);
  Eigen::ArrayXcd z = (r * (kI * theta).exp());
  Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(M);
  for (Eigen::Index i = c.size() - 1; i >= 0; --i) acc = acc * z + c[i];
  return acc;
}

TaylorCoeffs TaylorCoeffs::derivative() const {
  TaylorCoeffs out;
  if (c.size() <= 1) {
    out.c = Eigen::ArrayXcd::Zero(1);
    return out;
  }
  out.c.resize(c.size() - 1);
  for (Eigen::Index i = 1; i < c.size(); ++i) out.c[i - 1] = double(i) * c[i];
  return out;
}

// ---------------------------------------------------------------------------
// Operator application

namespace {

std::vector<double> body_breakpoints(const RadialGridFunction& f) {
  std::vector<double> b{0.0};
  for (Eigen::Index i = 0; i < f.nodes.size(); ++i)
    if (f.nodes[i] > b.back()) b.push_back(f.nodes[i]);
  return b;
}

template <class Integrand>
std::complex<double> integrate_against(const RadialGridFunction& f,
                                       Integrand&& g, double tol) {
  // body over the sampled range, then the constant-extension tail to 1
  const auto breaks = body_breakpoints(f);
  QuadOptions opt{0.01 * tol, 0.1 * tol, 4000};
  auto integrand_r = [&](double t) { return f(t) * g(t); };
  std::complex<double> body = adaptive_over(integrand_r, breaks, opt).value;

  const double last = breaks.back();
  const double fend = f.values[f.values.size() - 1];
  std::complex<double> tail = 0.0;
  if (last < 1.0 && fend != 0.0) {
    auto integrand_u = [&](double u) { return fend * g(1.0 - u); };
    auto res = graded_to_one(integrand_u, last, QuadOptions{0.01 * tol, 0.1 * tol});
    if (res.diverging)
      throw NumericError("operator integrand does not decay toward t = 1");
    tail = res.value;
  }
  return body + tail;
}

}  // namespace

std::complex<double> apply_H_point(const KernelSeries& ks,
                                   const RadialGridFunction& f,
                                   std::complex<double> z, double tol) {
  if (!(std::abs(z) < 1.0)) throw DomainError("apply_H_point: need |z| < 1");
  const Weight& w = ks.weight();
  const double ktol = 0.01 * tol;
  return integrate_against(
      f,
      [&](double t) {
        return ks.averaged(t, z, ktol) * w.value_at_one_minus(1.0 - t);
      },
      tol);
}

std::complex<double> apply_H_point(const Weight& w, const RadialGridFunction& f,
                                   std::complex<double> z, double tol) {
  return apply_H_point(KernelSeries(w), f, z, tol);
}

TaylorCoeffs apply_H_coeffs(const Weight& w, const RadialGridFunction& f,
                            int N) {
  if (N < 0) throw DomainError("apply_H_coeffs: N must be >= 0");
  TaylorCoeffs out;
  out.c.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    auto g = [&](double t) {
      return (n == 0) ? w(t) : std::exp(n * std::log(t)) * w(t);
    };
    const std::complex<double> fn = integrate_against(f, g, 1e-12);
    out.c[n] = fn / (2.0 * (n + 1.0) * w.moment(2.0 * n + 1.0));
  }
  return out;
}

std::complex<double> apply_H_sublinear(const Weight& w,
                                       const RadialGridFunction& f,
                                       std::complex<double> z, double tol) {
  return apply_H_point(w, f.absolute(), z, tol);
}

std::complex<double> hilbert_classical_oracle(const RadialGridFunction& f,
                                              std::complex<double> z,
                                              double tol) {
  if (!(std::abs(z) < 1.0))
    throw DomainError("hilbert_classical_oracle: need |z| < 1");
  return integrate_against(
      f, [&](double t) { return 1.0 / (1.0 - t * z); }, tol);
}

// ---------------------------------------------------------------------------
// Test families

RadialGridFunction test_function_fa(double a) {
  return test_function_fa(a, RadialGridFunction::graded_nodes());
}

RadialGridFunction test_function_fa(double a, const Eigen::ArrayXd& nodes) {
  if (!(a >= 0.0) || !(a < 1.0)) throw DomainError("test_function_fa: a in [0,1)");
  return RadialGridFunction::sample(
      [a](double t) {
        const double d = 1.0 - a * t;
        return (1.0 - a * a) / (d * d);
      },
      nodes);
}

RadialGridFunction test_function_phir(const Weight& w, const Weight& nu,
                                      double p, double r) {
  return test_function_phir(w, nu, p, r, RadialGridFunction::graded_nodes());
}

RadialGridFunction test_function_phir(const Weight& w, const Weight& nu,
                                      double p, double r,
                                      const Eigen::ArrayXd& nodes) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw DomainError("test_function_phir: need 1 < p < inf");
  if (!(r >= 0.0) || !(r < 1.0)) throw DomainError("test_function_phir: r in [0,1)");
  const double e = 1.0 / (p - 1.0);  // p'/p
  auto phi = [&](double t) {
    const double u = 1.0 - t;
    const double v = std::exp(
        e * (w.log_value_at_one_minus(u) - nu.log_tail_at_one_minus(u)));
    if (!std::isfinite(v))
      throw NumericError("test_function_phir overflows on the grid");
    return v;
  };
  // keep the jump at r one grid cell wide
  std::vector<double> ns;
  std::vector<double> vs;
  const double eps = std::max(r * 1e-12, 1e-15);
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    if (nodes[i] < r - eps) {
      ns.push_back(nodes[i]);
      vs.push_back(0.0);
    }
  }
  if (r > 0.0) {
    ns.push_back(r - eps);
    vs.push_back(0.0);
  }
  ns.push_back(r);
  vs.push_back(phi(r));
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    if (nodes[i] > r) {
      ns.push_back(nodes[i]);
      vs.push_back(phi(nodes[i]));
    }
  }
  RadialGridFunction out;
  out.nodes = Eigen::Map<Eigen::ArrayXd>(ns.data(), ns.size());
  out.values = Eigen::Map<Eigen::ArrayXd>(vs.data(), vs.size());
  return out;
}

}  // namespace homega
