#pragma once

#include <cmath>
#include <limits>
#include <utility>

// Helpers for arithmetic on quantities stored as logarithms.  Tail integrals
// and moments of rapidly decaying weights underflow double precision long
// before the scans that consume them are done, so everything that can be
// positive-and-tiny is carried as log(value).

namespace homega {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b); tolerates -inf operands.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

// log(1 + e^a) = log_add(0, a).
inline double log1p_exp(double a) {
  if (a == kNegInf) return 0.0;
  if (a > 36.0) return a;  // 1 is below double epsilon of e^a
  return std::log1p(std::exp(a));
}

// Streaming log(sum of exp(l_i)) with on-the-fly rescaling.
class LogAccumulator {
 public:
  void add(double l) {
    if (l == kNegInf) return;
    if (l <= max_) {
      sum_ += std::exp(l - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - l) + 1.0;
      max_ = l;
    }
  }
  double log_total() const {
    if (sum_ <= 0.0) return kNegInf;
    return max_ + std::log(sum_);
  }
  bool empty() const { return sum_ <= 0.0; }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace homega
