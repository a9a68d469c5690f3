#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "prefbound/count.hpp"
#include "prefbound/logspace.hpp"
#include "prefbound/permutohedron.hpp"

namespace prefbound {

/// How permutohedron ball sizes enter the information-loss bound.
enum class BallMode {
  /// n_{k,A} = min((A-1)^k, A!), the tree approximation.
  paper,
  /// Exact ball sizes from cumulative Mahonian numbers.
  exact,
};

std::string_view to_string(BallMode mode);
/// Accepts "paper" or "exact"; throws InvalidArgument otherwise.
BallMode parse_ball_mode(std::string_view text);

struct BoundParams {
  int A = 0;
  int I = 0;
  int d = 0;
  /// Truncation of the information-loss sum; defaults to A(A-1)/2.
  std::optional<int> K;
  BallMode ball_mode = BallMode::paper;
  /// The representability bounds hold only if the population has at least
  /// as many unique preferences as can be represented.
  bool assume_u_ge_r = true;
  int log_space_threshold = kDefaultLogSpaceThreshold;

  [[nodiscard]] int max_distance() const { return A * (A - 1) / 2; }
  [[nodiscard]] int truncation() const { return K.value_or(max_distance()); }
};

/// log S(n, m), Stirling numbers of the second kind, by the
/// S(n, m) = m S(n-1, m) + S(n-1, m-1) recurrence in log space.
/// Zero (is_zero) when m > n or when m = 0 < n.
LogValue stirling2_log(int n, int m);

struct PathologyBound {
  double probability = 0.0;
  /// Probability that one fixed version (alternative subset and reference
  /// order) arises, summed over the number of individuals involved.
  double version_probability = 0.0;
  /// floor(A / (d+2)) disjoint alternative subsets.
  int disjoint_subsets = 0;
};

/// Lower bound on the probability that a uniform profile contains a
/// circulant pathology of size d+2 (and hence is not d-Euclidean).
/// Requires d < min(I, A-1).
PathologyBound pathology_probability_lower_bound_detail(const BoundParams& params);
double pathology_probability_lower_bound(const BoundParams& params);

struct BannedFraction {
  /// Probability of event B for a uniform permutation.
  double probability = 0.0;
  /// log(1 - P(B)), accumulated from the conditional complements so it
  /// stays accurate when P(B) is within rounding of one.
  double log_unbanned = 0.0;
  /// d >= A-1: nothing is banned.
  bool vacuous = false;
};

/// P(B) by the law-of-total-probability recursion over alternatives
/// 0, 1, ..., A-d-2, with conditional complement
/// prod_{j=d+n+1}^{A} (j-n)/(j-n+1) for the n-th (1-based) alternative.
BannedFraction banned_fraction(int A, int d);
double banned_probability(int A, int d);

struct RepresentableBound {
  double p_banned = 0.0;
  /// (1 - P(B)) A!, as a real.
  double rhat = 0.0;
  double log_rhat = 0.0;
  /// rhat / A!
  double fraction = 0.0;
  /// ceil(rhat): exact (rational arithmetic) when A is at most the
  /// log-space threshold, otherwise carried as log(rhat).
  Count rhat_count = Count::exact(0);
};

/// Upper bound on how many of the A! preferences a d-dimensional Euclidean
/// model can represent simultaneously.
RepresentableBound max_representable_upper_bound(int A, int d, int log_space_threshold = kDefaultLogSpaceThreshold);

struct FallingRatioOptions {
  /// Use the term-by-term sum when min(removed, draws) is at most this.
  std::uint64_t direct_terms = 4096;
};

/// log[(total - removed)_draws / (total)_draws] times 1(draws < total - removed).
///
/// Evaluated as the sum over min(removed, draws) factors of
/// log1p(-max / (total - i)), which is the same ratio by symmetry. Long
/// sums use an Euler-Maclaurin series instead. A ratio provably below
/// e^-800 is returned as zero.
LogValue log_falling_factorial_ratio(const Count& total, const Count& removed, const Count& draws,
                                     FallingRatioOptions options = {});

struct InfoLossBound {
  /// Lower bound on the expected adjacent-swap distance to the nearest
  /// representable preference.
  double expectation_lb = 0.0;
  /// expectation_lb / C(A, 2).
  double scaled_lb = 0.0;
  /// 1 - F(k) for k = 0..K.
  std::vector<double> terms;
  double rhat_used = 0.0;
  BallMode mode = BallMode::paper;
  bool vacuous = false;
};

/// F(k): upper bound on P(distance to nearest representable preference <= k).
double info_loss_cdf_bound(int k, const BoundParams& params);

/// Lower bound on expected information loss, sum_{k<=K} (1 - F(k)).
InfoLossBound info_loss_lower_bound(const BoundParams& params);

/// The conservative dimension threshold min(I-1, A-1) above which every
/// profile is d-Euclidean.
int sufficiency_threshold(int A, int I);

}  // namespace prefbound
