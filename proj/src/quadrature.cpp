#include "homega/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <mutex>

namespace homega {

namespace {

// Legendre P_n and P_n' by the three-term recurrence.
std::pair<double, double> legendre_pd(int n, double x) {
  double pm1 = 1.0, p = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
    pm1 = p;
    p = pk;
  }
  const double d = n * (x * p - pm1) / (x * x - 1.0);
  return {p, d};
}

GaussRule build_rule(int n) {
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come
  // from the first eigenvector components.  One Newton step recovers the
  // last bits the symmetric eigensolver leaves on the table.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule rule;
  rule.nodes = es.eigenvalues().array();
  rule.weights = 2.0 * es.eigenvectors().row(0).array().square();
  for (int i = 0; i < n; ++i) {
    double x = rule.nodes[i];
    auto [p, d] = legendre_pd(n, x);
    x -= p / d;
    auto [p2, d2] = legendre_pd(n, x);
    x -= p2 / d2;
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * d2 * d2);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

}  // namespace homega
