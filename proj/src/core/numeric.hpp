#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <span>

namespace freeinterp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Neumaier-compensated running sum. Sums of nonnegative terms agree to a
/// few ulps regardless of accumulation order.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

/// Wraps an angle into [0, 2pi).
inline double wrap_angle(double theta) noexcept {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

/// Wraps an angle difference into (-pi, pi].
inline double wrap_difference(double delta) noexcept {
  double t = std::remainder(delta, kTwoPi);
  if (t <= -kPi) t += kTwoPi;
  return t;
}

/// Adaptive Gauss-Kronrod (15-point) integral of f over [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-10);

}  // namespace freeinterp
