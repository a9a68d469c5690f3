#pragma once

#include <cstdint>
#include <vector>

#include "prefbound/count.hpp"
#include "prefbound/perm.hpp"

namespace prefbound {

/// Above this A, Mahonian tables are carried in log space instead of exact
/// big integers (A! leaves double range at 171).
inline constexpr int kDefaultLogSpaceThreshold = 170;

/// Preferences one adjacent swap away from p, in swap-position order.
std::vector<Preference> adjacent_neighbors(const Preference& p);

/// Cumulative ball sizes around the identity in the permutohedron, by BFS.
/// Entry k counts permutations within k adjacent swaps; k runs to A(A-1)/2.
/// Throws CapacityError for A > 7.
std::vector<std::uint64_t> ball_sizes_bfs(int num_alternatives);

/// Distribution of the inversion number over the A! permutations.
///
/// Exact tables hold big integers. Log-space tables (A above the threshold)
/// hold natural logs of the counts, computed from the normalized
/// distribution in extended precision.
class MahonianTable {
 public:
  [[nodiscard]] int num_alternatives() const { return num_alternatives_; }
  [[nodiscard]] int max_distance() const { return max_distance_; }
  [[nodiscard]] bool is_exact() const { return !counts_.empty(); }

  /// Exact counts; empty for log-space tables.
  [[nodiscard]] const std::vector<BigInt>& counts() const { return counts_; }

  /// Number of permutations at distance exactly j.
  [[nodiscard]] Count count(int j) const;
  /// Number of permutations within distance k; saturates at A! for k >= max.
  [[nodiscard]] Count cumulative(int k) const;

 private:
  friend MahonianTable mahonian_counts(int, int);

  int num_alternatives_ = 0;
  int max_distance_ = 0;
  std::vector<BigInt> counts_;
  std::vector<BigInt> cumulative_;
  std::vector<double> log_counts_;
  std::vector<double> log_cumulative_;
};

MahonianTable mahonian_counts(int num_alternatives, int log_space_threshold = kDefaultLogSpaceThreshold);

/// min((A-1)^k, A!): the (A-1)-ary tree approximation to the ball size.
BigInt ball_size_paper(int k, int num_alternatives);

}  // namespace prefbound
