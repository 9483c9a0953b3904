#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "homega/errors.hpp"

namespace homega {

// Shape-preserving piecewise-cubic interpolant (Fritsch-Carlson slopes).
// Used for smooth log-moment curves sampled on sparse geometric grids.
class PchipCurve {
 public:
  PchipCurve() = default;
  PchipCurve(Eigen::ArrayXd x, Eigen::ArrayXd y) : x_(std::move(x)), y_(std::move(y)) {
    const auto n = x_.size();
    if (n < 2 || n != y_.size()) throw DomainError("PchipCurve: need >= 2 nodes");
    d_.resize(n);
    Eigen::ArrayXd h = x_.tail(n - 1) - x_.head(n - 1);
    Eigen::ArrayXd s = (y_.tail(n - 1) - y_.head(n - 1)) / h;
    d_[0] = s[0];
    d_[n - 1] = s[n - 2];
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      if (s[i - 1] * s[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
      }
    }
  }

  double operator()(double x) const {
    const auto n = x_.size();
    if (n == 0) throw DomainError("PchipCurve: empty");
    if (x <= x_[0]) return y_[0] + d_[0] * (x - x_[0]);
    if (x >= x_[n - 1]) return y_[n - 1] + d_[n - 1] * (x - x_[n - 1]);
    const double* begin = x_.data();
    auto i = std::upper_bound(begin, begin + n, x) - begin - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return y_[i] * (2 * t3 - 3 * t2 + 1) + h * d_[i] * (t3 - 2 * t2 + t) +
           y_[i + 1] * (-2 * t3 + 3 * t2) + h * d_[i + 1] * (t3 - t2);
  }

  double x_max() const { return x_.size() ? x_[x_.size() - 1] : 0.0; }
  bool empty() const { return x_.size() == 0; }

 private:
  Eigen::ArrayXd x_, y_, d_;
};

}  // namespace homega
