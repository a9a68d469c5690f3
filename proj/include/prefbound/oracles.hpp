#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prefbound/bounds.hpp"
#include "prefbound/pathology.hpp"
#include "prefbound/results.hpp"

namespace prefbound {

/// Reduced fraction numerator / denominator.
struct ExactFraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  [[nodiscard]] double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  friend bool operator==(const ExactFraction&, const ExactFraction&) = default;
};

struct OracleLimits {
  /// Cap on (A!)^I ordered profiles for exhaustive enumeration.
  std::uint64_t max_profiles = 10'000'000;
  /// Cap on A for enumerating all A! permutations.
  int max_permutation_alternatives = 10;
  DetectorLimits detector;
};

/// Exact probability that a uniform ordered profile contains a size-k
/// circulant pathology. Throws CapacityError above `limits.max_profiles`.
ExactFraction exact_pathology_probability(int A, int I, int k, const OracleLimits& limits = {});

struct McEstimate {
  double estimate = 0.0;
  /// sqrt(estimate (1 - estimate) / trials)
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t hits = 0;
};

/// Monte Carlo estimate of the same probability. Trials run in fixed chunks,
/// each on its own stream split from `seed`, so the result does not depend
/// on `jobs`.
McEstimate mc_pathology_probability(int A, int I, int k, std::uint64_t trials, std::uint64_t seed, int jobs = 1,
                                    const DetectorLimits& limits = {});

/// Fraction of all A! permutations for which event B holds.
ExactFraction enumerate_event_B(int A, int d, const OracleLimits& limits = {});

/// Number of distinct strict orders induced on alternatives at `locations`
/// (on a line) as the ideal point sweeps the line. Throws DegeneracyError
/// for coincident locations or coincident pairwise midpoints.
std::uint64_t one_dim_distinct_orders(std::span<const double> locations);

/// Generic positions 2^i - 1, i = 0..A-1: all pairwise midpoints distinct.
std::vector<double> generic_line_locations(int A);

struct VerifyBudget {
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  int jobs = 1;
  OracleLimits limits;
  /// Largest A for the event-B and 1-D representability checks.
  int max_enumeration_alternatives = 8;
  /// Largest A for the Mahonian-versus-BFS check.
  int max_bfs_alternatives = 7;
  /// Multiplies the pathology bound before comparison (fault injection).
  double bound_inflation = 1.0;
};

/// Cross-checks each bound against its oracle over `grid`.
///
/// Emits one verify_bound_c row per grid point and, once per distinct
/// (A, d) or A, the verify_banned_fraction, verify_rhat_line and
/// verify_ball_sizes rows. Status is "pass", "fail: ..." or
/// "skipped: ...". Failures never abort the run.
std::vector<SweepResult> verify_all(std::span<const BoundParams> grid, const VerifyBudget& budget = {});

/// Counts of pass/fail/skipped rows followed by one line per failure.
std::string summarize_report(std::span<const SweepResult> rows);

}  // namespace prefbound
