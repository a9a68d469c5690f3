#include "prefbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "prefbound/errors.hpp"

namespace prefbound {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Ratios below e^-800 are reported as exactly zero.
const double kLogUnderflow = std::log(800.0);
constexpr double kExactDoubleLimit = 9007199254740992.0;  // 2^53

std::string describe(const BoundParams& p) {
  return "(A=" + std::to_string(p.A) + ", I=" + std::to_string(p.I) + ", d=" + std::to_string(p.d) + ")";
}

// log S(j, m) for j = 0..n_max.
std::vector<double> stirling2_log_column(int n_max, int m) {
  std::vector<double> row(static_cast<std::size_t>(m) + 1, kNegInf);
  std::vector<double> column(static_cast<std::size_t>(n_max) + 1, kNegInf);
  row[0] = 0.0;  // S(0, 0) = 1
  column[0] = (m == 0) ? 0.0 : kNegInf;
  for (int n = 1; n <= n_max; ++n) {
    for (int c = std::min(n, m); c >= 1; --c) {
      const auto ci = static_cast<std::size_t>(c);
      const double stay = std::isinf(row[ci]) ? kNegInf : std::log(static_cast<double>(c)) + row[ci];
      row[ci] = log_add(stay, row[ci - 1]);
    }
    row[0] = kNegInf;
    column[static_cast<std::size_t>(n)] = row[static_cast<std::size_t>(m)];
  }
  return column;
}

// Conditional probabilities that alternative n-1 (n = 1..A-d-1) is *not* in
// its first A-d-n positions, given the same held for all earlier ones.
std::vector<double> conditional_complements(int A, int d) {
  std::vector<double> out;
  for (int n = 1; n <= A - d - 1; ++n) {
    double c = 1.0;
    for (int j = d + n + 1; j <= A; ++j) c *= static_cast<double>(j - n) / static_cast<double>(j - n + 1);
    out.push_back(c);
  }
  return out;
}

Rational exact_banned_probability(int A, int d) {
  if (d >= A - 1) return Rational(0);
  std::vector<Rational> comps;
  for (int n = 1; n <= A - d - 1; ++n) {
    Rational c = 1;
    for (int j = d + n + 1; j <= A; ++j) c *= Rational(j - n, j - n + 1);
    comps.push_back(c);
  }
  Rational tail = 1 - comps.back();
  for (auto it = comps.rbegin() + 1; it != comps.rend(); ++it) tail = (1 - *it) + *it * tail;
  return tail;
}

BigInt ceil_div(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  BigInt out = num / den;
  if (out * den < num) ++out;
  return out;
}

// Per-(A, d) state shared by all k of the information-loss sum.
class InfoLossEvaluator {
 public:
  explicit InfoLossEvaluator(const BoundParams& params) : params_(params) {
    exact_ = params.A <= params.log_space_threshold;
    const auto rb = max_representable_upper_bound(params.A, params.d, params.log_space_threshold);
    rhat_ = rb.rhat_count;
    rhat_used_ = rb.rhat_count.is_exact() ? rb.rhat_count.to_double() : rb.rhat;
    total_ = exact_ ? Count::exact(factorial(params.A)) : Count::from_log(std::lgamma(params.A + 1.0));
    if (params.ball_mode == BallMode::exact) mahonian_ = mahonian_counts(params.A, params.log_space_threshold);
    saturated_ = exact_ && power_ >= total_.value();
  }

  [[nodiscard]] double rhat_used() const { return rhat_used_; }

  // Ball size for consecutive k, starting at 0.
  Count ball(int k) {
    if (params_.ball_mode == BallMode::exact) return mahonian_->cumulative(k);
    if (exact_) {
      while (power_k_ < k && !saturated_) {
        power_ *= (params_.A - 1);
        ++power_k_;
        saturated_ = power_ >= total_.value();
      }
      return saturated_ ? total_ : Count::exact(power_);
    }
    return Count::from_log(std::min(k * std::log(params_.A - 1.0), total_.log()));
  }

  LogValue tail_term(int k) { return log_falling_factorial_ratio(total_, ball(k), rhat_); }

 private:
  BoundParams params_;
  bool exact_ = true;
  Count rhat_ = Count::exact(0);
  double rhat_used_ = 0.0;
  Count total_ = Count::exact(0);
  std::optional<MahonianTable> mahonian_;
  BigInt power_ = 1;
  int power_k_ = 0;
  bool saturated_ = false;
};

void validate_info_loss(const BoundParams& params) {
  if (params.A < 2) throw InvalidArgument("information-loss bound requires A >= 2 " + describe(params));
  if (params.d < 1) throw InvalidArgument("information-loss bound requires d >= 1 " + describe(params));
  if (!params.assume_u_ge_r) {
    throw InvalidArgument("information-loss bound is only valid under u >= r (assume_u_ge_r)");
  }
  if (params.K && (*params.K < 0 || *params.K > params.max_distance())) {
    throw InvalidArgument("information-loss bound requires 0 <= K <= A(A-1)/2 = " +
                          std::to_string(params.max_distance()) + ", got K=" + std::to_string(*params.K));
  }
}

}  // namespace

std::string_view to_string(BallMode mode) { return mode == BallMode::paper ? "paper" : "exact"; }

BallMode parse_ball_mode(std::string_view text) {
  if (text == "paper") return BallMode::paper;
  if (text == "exact") return BallMode::exact;
  throw InvalidArgument("ball mode must be 'paper' or 'exact', got '" + std::string(text) + "'");
}

LogProb LogProb::from_log(double lv) {
  if (std::isnan(lv)) throw InvalidArgument("log probability is NaN");
  if (lv > 1e-12) throw InvalidArgument("log probability " + std::to_string(lv) + " exceeds 0");
  if (std::isinf(lv)) return zero();
  return LogProb(LogValue{std::min(lv, 0.0), false});
}

LogValue stirling2_log(int n, int m) {
  if (n < 0 || m < 0) throw InvalidArgument("stirling2_log: n and m must be non-negative");
  if (m > n) return LogValue::zero();
  return LogValue::from_log(stirling2_log_column(n, m)[static_cast<std::size_t>(n)]);
}

PathologyBound pathology_probability_lower_bound_detail(const BoundParams& params) {
  const int A = params.A, I = params.I, d = params.d;
  if (A < 1 || I < 1 || d < 1) throw InvalidArgument("pathology bound requires A, I, d >= 1 " + describe(params));
  if (!(d < std::min(I, A - 1))) {
    throw InvalidArgument("pathology bound requires d < min(I, A-1) " + describe(params));
  }
  const int m = d + 2;
  PathologyBound out;
  out.disjoint_subsets = A / m;
  if (I < m) return out;

  const double log_m_fact = std::lgamma(m + 1.0);
  // log(1 - m/m!): the chance an individual has none of the m necessary
  // sub-preferences.
  const double log_miss = std::log1p(-std::exp(std::log(static_cast<double>(m)) - log_m_fact));
  const auto stirling = stirling2_log_column(I, m);
  double log_sum = kNegInf;
  for (int k = m; k <= I; ++k) {
    const double log_bk = log_binomial(I, k) + stirling[static_cast<std::size_t>(k)] + log_m_fact -
                          static_cast<double>(k) * log_m_fact + static_cast<double>(I - k) * log_miss;
    log_sum = log_add(log_sum, log_bk);
  }
  double version = std::min(1.0, std::exp(log_sum));
  double log_miss_version = std::log1p(-version);
  // Near one the sum above loses the complement to rounding. The sum is the
  // chance that all m sub-preferences occur, so its complement is
  // sum_j (-1)^(j+1) C(m, j) (1 - j/m!)^I; use that when it does not cancel.
  if (version > 0.5) {
    const auto log_t = [&](int j) {
      return log_binomial(m, j) + static_cast<double>(I) * std::log1p(-std::exp(std::log(j) - log_m_fact));
    };
    const double lead = log_t(1);
    double alt = 0.0, mag = 0.0;
    for (int j = 1; j <= m; ++j) {
      const double t = std::exp(log_t(j) - lead);
      alt += (j % 2 == 1) ? t : -t;
      mag += t;
    }
    if (alt > 0.0 && mag < 1e4 * alt) {
      log_miss_version = lead + std::log(alt);
      version = -std::expm1(log_miss_version);
    }
  }
  out.version_probability = version;
  out.probability = -std::expm1(static_cast<double>(out.disjoint_subsets) * log_miss_version);
  out.probability = std::clamp(out.probability, 0.0, 1.0);
  return out;
}

double pathology_probability_lower_bound(const BoundParams& params) {
  return pathology_probability_lower_bound_detail(params).probability;
}

BannedFraction banned_fraction(int A, int d) {
  if (A < 1 || d < 1) throw InvalidArgument("banned_fraction: requires A >= 1 and d >= 1");
  BannedFraction out;
  if (d >= A - 1) {
    out.vacuous = true;
    return out;
  }
  const auto comps = conditional_complements(A, d);
  // Innermost level: the last alternative in its window.
  double tail = 1.0 - comps.back();
  for (auto it = comps.rbegin() + 1; it != comps.rend(); ++it) tail = (1.0 - *it) + *it * tail;
  out.probability = std::clamp(tail, 0.0, 1.0);
  for (double c : comps) out.log_unbanned += std::log(c);
  return out;
}

double banned_probability(int A, int d) { return banned_fraction(A, d).probability; }

RepresentableBound max_representable_upper_bound(int A, int d, int log_space_threshold) {
  const auto banned = banned_fraction(A, d);
  RepresentableBound out;
  out.p_banned = banned.probability;
  const double log_total = std::lgamma(A + 1.0);
  out.log_rhat = banned.log_unbanned + log_total;
  out.rhat = std::exp(out.log_rhat);
  out.fraction = std::exp(banned.log_unbanned);
  if (A <= log_space_threshold) {
    const Rational unbanned = 1 - exact_banned_probability(A, d);
    out.rhat_count = Count::exact(ceil_div(unbanned * Rational(factorial(A))));
    out.rhat = out.rhat_count.to_double();
  } else {
    out.rhat_count = Count::from_log(out.log_rhat);
  }
  return out;
}

LogValue log_falling_factorial_ratio(const Count& total, const Count& removed, const Count& draws,
                                     FallingRatioOptions options) {
  const bool exact = total.is_exact() && removed.is_exact() && draws.is_exact();
  const double log_n = total.log();
  const double log_removed = removed.log();
  const double log_draws = draws.log();

  // Indicator: draws < total - removed.
  if (exact) {
    if (!(draws.value() < total.value() - removed.value())) return LogValue::zero();
    if (removed.value() == 0 || draws.value() == 0) return LogValue{0.0, false};
  } else {
    if (log_removed >= log_n) return LogValue::zero();
    if (std::isinf(log_removed) || std::isinf(log_draws)) return LogValue{0.0, false};
    if (!(log_draws < log_n + std::log1p(-std::exp(log_removed - log_n)))) return LogValue::zero();
  }

  // Symmetric in (removed, draws): iterate over the smaller.
  const double log_small = std::min(log_removed, log_draws);
  const double log_large = std::max(log_removed, log_draws);
  if (log_small + log_large - log_n > kLogUnderflow) return LogValue::zero();

  const bool representable = exact && log_n < 709.0;
  const double n_d = representable ? total.value().convert_to<double>() : std::exp(log_n);
  const double large_d = representable ? std::max(removed.value(), draws.value()).convert_to<double>()
                                       : std::exp(log_large);
  const double sigma = representable ? large_d / n_d : std::exp(log_large - log_n);
  // (total - large) / total
  double rest = 0.0;
  if (representable) {
    const BigInt diff = total.value() - std::max(removed.value(), draws.value());
    rest = diff.convert_to<double>() / n_d;
  } else {
    rest = -std::expm1(log_large - log_n);
  }
  const double inv_n = representable ? 1.0 / n_d : std::exp(-log_n);
  const bool small_total = representable && n_d < kExactDoubleLimit;

  std::uint64_t terms = 0;
  if (exact) {
    const BigInt small = std::min(removed.value(), draws.value());
    terms = small > options.direct_terms ? options.direct_terms + 1 : small.convert_to<std::uint64_t>();
  } else {
    const double s = std::exp(log_small);
    terms = s > static_cast<double>(options.direct_terms) ? options.direct_terms + 1
                                                         : static_cast<std::uint64_t>(std::llround(s));
  }

  const auto direct = [&](std::uint64_t count) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto id = static_cast<double>(i);
      const double x = small_total ? large_d / (n_d - id) : sigma / (1.0 - id * inv_n);
      if (x <= 0.5) {
        acc += std::log1p(-x);
      } else {
        const double y = small_total ? (n_d - large_d - id) / (n_d - id) : (rest - id * inv_n) / (1.0 - id * inv_n);
        acc += std::log(y);
      }
    }
    return acc;
  };

  if (terms <= options.direct_terms) return LogValue::from_log(direct(terms));

  const double mu = std::exp(log_small - log_n);
  const double x_max = sigma / (1.0 - mu);
  if (x_max > 0.5) {
    // Only reachable for modest counts: the underflow test above bounds
    // min * max / total.
    const double count = exact ? std::min(removed.value(), draws.value()).convert_to<double>() : std::exp(log_small);
    return LogValue::from_log(direct(static_cast<std::uint64_t>(std::llround(count))));
  }

  // Sum_{i<m} f(i) with f(t) = log1p(-sigma / (1 - t/N)), by Euler-Maclaurin:
  // integral + (f(0) - f(m))/2 + (f'(m) - f'(0))/12. The integral is
  // -sum_p (large/p) sigma^(p-1) J_p(mu) with J_1 = -log1p(-mu) and
  // J_p = expm1(-(p-1) log1p(-mu)) / (p-1).
  const double log_mu = log_small - log_n;
  const double log1m_mu = std::log1p(-mu);
  const double log_sigma = log_large - log_n;
  double integral = 0.0;
  for (int p = 1; p < 400; ++p) {
    // J_p / mu, which tends to 1 + p mu / 2 as mu vanishes.
    double jp_over_mu = 1.0 + 0.5 * p * mu;
    if (p * mu > 1e-8) jp_over_mu = ((p == 1) ? -log1m_mu : std::expm1(-(p - 1) * log1m_mu) / (p - 1)) / mu;
    const double term =
        std::exp(log_large + (p == 1 ? 0.0 : (p - 1) * log_sigma) + log_mu + std::log(jp_over_mu) - std::log(static_cast<double>(p)));
    integral -= term;
    if (term < 1e-18 * std::abs(integral)) break;
  }
  const double f0 = std::log1p(-sigma);
  const double fm = std::log1p(-x_max);
  const double df0 = -sigma * inv_n / (1.0 - sigma);
  const double dfm = -sigma * inv_n / ((1.0 - mu) * (1.0 - mu - sigma));
  return LogValue::from_log(integral + 0.5 * (f0 - fm) + (dfm - df0) / 12.0);
}

double info_loss_cdf_bound(int k, const BoundParams& params) {
  if (k < 0) throw InvalidArgument("info_loss_cdf_bound: k must be >= 0");
  validate_info_loss(params);
  if (params.d >= params.A - 1) return 1.0;
  InfoLossEvaluator eval(params);
  return std::clamp(1.0 - eval.tail_term(k).value(), 0.0, 1.0);
}

InfoLossBound info_loss_lower_bound(const BoundParams& params) {
  validate_info_loss(params);
  InfoLossBound out;
  out.mode = params.ball_mode;
  const int K = params.truncation();
  out.terms.assign(static_cast<std::size_t>(K) + 1, 0.0);
  if (params.d >= params.A - 1) {
    out.vacuous = true;
    out.rhat_used = std::exp(std::lgamma(params.A + 1.0));
    return out;
  }
  InfoLossEvaluator eval(params);
  out.rhat_used = eval.rhat_used();
  for (int k = 0; k <= K; ++k) {
    const LogValue term = eval.tail_term(k);
    // Ball sizes only grow with k, so once a term vanishes the rest do too.
    if (term.is_zero) break;
    const double v = std::clamp(term.value(), 0.0, 1.0);
    out.terms[static_cast<std::size_t>(k)] = v;
    out.expectation_lb += v;
  }
  out.scaled_lb = out.expectation_lb / static_cast<double>(params.max_distance());
  return out;
}

int sufficiency_threshold(int A, int I) {
  if (A < 1 || I < 1) throw InvalidArgument("sufficiency_threshold: A and I must be >= 1");
  return std::min(I - 1, A - 1);
}

}  // namespace prefbound
