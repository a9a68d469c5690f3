#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

namespace prefbound {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(int n);

/// Natural log of a non-negative big integer; -inf for zero.
double log_of(const BigInt& value);

/// Non-negative count that is exact when it was computed exactly and
/// otherwise known only through its natural log.
class Count {
 public:
  static Count exact(BigInt value);
  static Count from_log(double log_value);

  [[nodiscard]] bool is_exact() const { return exact_.has_value(); }
  /// Throws std::logic_error for log-only counts.
  [[nodiscard]] const BigInt& value() const;
  [[nodiscard]] double log() const { return log_; }
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string to_string() const;

 private:
  Count(std::optional<BigInt> exact, double log_value) : exact_(std::move(exact)), log_(log_value) {}

  std::optional<BigInt> exact_;
  double log_;
};

}  // namespace prefbound
