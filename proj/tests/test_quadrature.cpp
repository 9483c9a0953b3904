#include <doctest.h>

#include <cmath>

#include "homega/quadrature.hpp"

using namespace homega;

TEST_CASE("gauss rules integrate polynomials exactly") {
  for (int n : {5, 15, 31}) {
    const auto& rule = gauss_legendre(n);
    CHECK(rule.nodes.size() == n);
    CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    // exact for degree 2n-1
    const int d = 2 * n - 1;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += rule.weights[i] * std::pow(rule.nodes[i], d - 1);
    const double exact = 2.0 / d;  // ∫_{-1}^1 x^{d-1}, d-1 even
    CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("gauss nodes match known closed forms") {
  const auto& g2 = gauss_legendre(2);
  CHECK(std::abs(g2.nodes[1] - 1.0 / std::sqrt(3.0)) < 1e-15);
  const auto& g3 = gauss_legendre(3);
  CHECK(std::abs(g3.nodes[2] - std::sqrt(3.0 / 5.0)) < 1e-15);
  CHECK(g3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("adaptive handles a sharp interior peak") {
  // ∫_0^1 1/sqrt(|x - 0.3|) dx = 2(sqrt(0.3) + sqrt(0.7))
  auto f = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3) + 1e-300); };
  const double exact = 2.0 * (std::sqrt(0.3) + std::sqrt(0.7));
  const auto res = adaptive(f, 0.0, 1.0, {1e-8, 0.0, 20000});
  CHECK(res.value == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("log-space quadrature reproduces beta integrals at extreme scale") {
  // ∫_0^1 (1-u)^x u^g du = B(x+1, g+1), evaluated for x so large the value
  // underflows linear doubles
  const double x = 5e4, g = 0.5;
  auto lf = [&](double u) { return x * std::log1p(-u) + g * std::log(u); };
  const auto res = graded_log_to_zero(lf, 1.0, {1e-11, 0.0});
  const double oracle =
      std::lgamma(x + 1.0) + std::lgamma(g + 1.0) - std::lgamma(x + g + 2.0);
  CHECK(res.converged);
  CHECK(res.log_value == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("graded integration toward one flags a divergent integrand") {
  auto f = [](double u) { return 1.0 / u; };  // ∫ (1-r)^{-1}
  const auto res = graded_to_one(f, 0.0, {1e-10, 0.0}, 200);
  CHECK(res.diverging);
}

TEST_CASE("graded integration toward one converges on an integrable one") {
  auto f = [](double u) { return 1.0 / std::sqrt(u); };
  const auto res = graded_to_one(f, 0.0, {1e-10, 0.0});
  CHECK(!res.diverging);
  CHECK(res.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("ascending panels sum a decaying series-like integrand") {
  // ∫_1^inf x e^{-x} dx = 2/e
  auto lf = [](double x) { return std::log(x) - x; };
  const auto res = graded_log_ascending(lf, 1.0, {1e-10, 0.0});
  CHECK(std::exp(res.log_value) == doctest::Approx(2.0 / M_E).epsilon(1e-9));
}
