#include "prefbound/count.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace prefbound {

BigInt factorial(int n) {
  BigInt out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

double log_of(const BigInt& value) {
  if (value <= 0) return -std::numeric_limits<double>::infinity();
  const auto bits = boost::multiprecision::msb(value);
  if (bits < 1000) return std::log(value.convert_to<double>());
  const auto shift = bits - 60;
  BigInt head = value;
  head >>= shift;
  return std::log(head.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

Count Count::exact(BigInt value) {
  double lv = log_of(value);
  return Count(std::move(value), lv);
}

Count Count::from_log(double log_value) { return Count(std::nullopt, log_value); }

const BigInt& Count::value() const {
  if (!exact_) throw std::logic_error("count is only known in log space");
  return *exact_;
}

double Count::to_double() const {
  if (exact_ && log_ < 709.0) return exact_->convert_to<double>();
  return std::exp(log_);
}

std::string Count::to_string() const {
  if (exact_) return exact_->str();
  return fmt::format("exp({:.17g})", log_);
}

}  // namespace prefbound
