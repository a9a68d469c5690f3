#pragma once

#include <cmath>
#include <limits>

namespace prefbound {

/// Non-negative real carried as its natural log.
struct LogValue {
  double log_value = 0.0;
  bool is_zero = false;

  static LogValue zero() { return {-std::numeric_limits<double>::infinity(), true}; }
  static LogValue from_log(double lv) {
    if (std::isinf(lv) && lv < 0) return zero();
    return {lv, false};
  }
  static LogValue from_value(double v) { return v <= 0.0 ? zero() : LogValue{std::log(v), false}; }

  [[nodiscard]] double value() const { return is_zero ? 0.0 : std::exp(log_value); }
};

/// Probability in log space. Construction accepts up to 1e-12 of slack above
/// one (rounding in log-sum-exp) and clamps it away.
class LogProb {
 public:
  static LogProb zero() { return LogProb(LogValue::zero()); }
  static LogProb one() { return LogProb(LogValue{0.0, false}); }
  /// Throws InvalidArgument if exp(lv) exceeds 1 by more than 1e-12.
  static LogProb from_log(double lv);

  [[nodiscard]] bool is_zero() const { return v_.is_zero; }
  [[nodiscard]] double log() const { return v_.log_value; }
  [[nodiscard]] double probability() const { return v_.value(); }
  /// 1 - p, computed with expm1.
  [[nodiscard]] double complement() const { return v_.is_zero ? 1.0 : -std::expm1(v_.log_value); }

 private:
  explicit LogProb(LogValue v) : v_(v) {}
  LogValue v_;
};

/// log(exp(a) + exp(b)) without overflow.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (std::isinf(b) && b < 0) return a;
  return a + std::log1p(std::exp(b - a));
}

/// log C(n, k) via log-gamma.
inline double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace prefbound
