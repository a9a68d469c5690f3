#include "prefbound/permutohedron.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

#include "prefbound/errors.hpp"

namespace prefbound {

namespace {

constexpr int kMaxBfsAlternatives = 7;
// Long double keeps 1/A! representable up to roughly A = 1700.
constexpr int kMaxLogSpaceAlternatives = 1500;

int max_distance_for(int a) { return a * (a - 1) / 2; }

}  // namespace

std::vector<Preference> adjacent_neighbors(const Preference& p) {
  std::vector<Preference> out;
  if (p.size() < 2) return out;
  out.reserve(static_cast<std::size_t>(p.size() - 1));
  std::vector<int> r(p.ranking().begin(), p.ranking().end());
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    std::swap(r[i], r[i + 1]);
    out.emplace_back(r);
    std::swap(r[i], r[i + 1]);
  }
  return out;
}

std::vector<std::uint64_t> ball_sizes_bfs(int num_alternatives) {
  if (num_alternatives < 1) throw InvalidArgument("ball_sizes_bfs: A must be >= 1");
  if (num_alternatives > kMaxBfsAlternatives) {
    throw CapacityError("ball_sizes_bfs: A=" + std::to_string(num_alternatives) + " exceeds BFS cap of " +
                        std::to_string(kMaxBfsAlternatives));
  }
  const int maxd = max_distance_for(num_alternatives);
  std::vector<std::uint64_t> at_distance(static_cast<std::size_t>(maxd) + 1, 0);

  std::map<Preference, int> dist;
  std::deque<Preference> frontier;
  const auto start = Preference::identity(num_alternatives);
  dist.emplace(start, 0);
  frontier.push_back(start);
  while (!frontier.empty()) {
    const Preference cur = frontier.front();
    frontier.pop_front();
    const int dcur = dist.at(cur);
    ++at_distance[static_cast<std::size_t>(dcur)];
    for (auto& next : adjacent_neighbors(cur)) {
      if (dist.emplace(next, dcur + 1).second) frontier.push_back(std::move(next));
    }
  }

  std::vector<std::uint64_t> cumulative(at_distance.size());
  std::uint64_t running = 0;
  for (std::size_t k = 0; k < at_distance.size(); ++k) {
    running += at_distance[k];
    cumulative[k] = running;
  }
  return cumulative;
}

Count MahonianTable::count(int j) const {
  if (j < 0 || j > max_distance_) return Count::exact(0);
  const auto idx = static_cast<std::size_t>(j);
  return is_exact() ? Count::exact(counts_[idx]) : Count::from_log(log_counts_[idx]);
}

Count MahonianTable::cumulative(int k) const {
  if (k < 0) return Count::exact(0);
  const auto idx = static_cast<std::size_t>(std::min(k, max_distance_));
  return is_exact() ? Count::exact(cumulative_[idx]) : Count::from_log(log_cumulative_[idx]);
}

MahonianTable mahonian_counts(int num_alternatives, int log_space_threshold) {
  if (num_alternatives < 1) throw InvalidArgument("mahonian_counts: A must be >= 1");
  MahonianTable table;
  table.num_alternatives_ = num_alternatives;
  table.max_distance_ = max_distance_for(num_alternatives);
  const auto size = static_cast<std::size_t>(table.max_distance_) + 1;

  if (num_alternatives <= log_space_threshold) {
    // T(a, j) = T(a, j-1) + T(a-1, j) - T(a-1, j-a)
    std::vector<BigInt> prev{1};
    for (int a = 2; a <= num_alternatives; ++a) {
      const int maxd = max_distance_for(a);
      std::vector<BigInt> row(static_cast<std::size_t>(maxd) + 1);
      const auto prev_at = [&](int j) -> BigInt {
        return (j >= 0 && j < static_cast<int>(prev.size())) ? prev[static_cast<std::size_t>(j)] : BigInt(0);
      };
      row[0] = 1;
      for (int j = 1; j <= maxd; ++j) {
        row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + prev_at(j) - prev_at(j - a);
      }
      prev = std::move(row);
    }
    table.counts_ = std::move(prev);
    table.cumulative_.resize(size);
    BigInt running = 0;
    for (std::size_t j = 0; j < size; ++j) {
      running += table.counts_[j];
      table.cumulative_[j] = running;
    }
    return table;
  }

  if (num_alternatives > kMaxLogSpaceAlternatives) {
    throw CapacityError("mahonian_counts: A=" + std::to_string(num_alternatives) + " exceeds log-space cap of " +
                        std::to_string(kMaxLogSpaceAlternatives));
  }

  // Normalized distribution P(a, j) = T(a, j) / a!. Only the lower half is
  // computed with a running window sum (where it is non-decreasing); the
  // upper half comes from the symmetry P(a, j) = P(a, maxd - j).
  std::vector<long double> prev{1.0L};
  for (int a = 2; a <= num_alternatives; ++a) {
    const int prev_max = max_distance_for(a - 1);
    const int maxd = max_distance_for(a);
    const auto prev_at = [&](int j) -> long double {
      return (j >= 0 && j <= prev_max) ? prev[static_cast<std::size_t>(j)] : 0.0L;
    };
    std::vector<long double> row(static_cast<std::size_t>(maxd) + 1);
    long double window = 0.0L;
    const int half = maxd / 2;
    for (int j = 0; j <= half; ++j) {
      window += prev_at(j) - prev_at(j - a);
      row[static_cast<std::size_t>(j)] = window / static_cast<long double>(a);
    }
    for (int j = half + 1; j <= maxd; ++j) row[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(maxd - j)];
    prev = std::move(row);
  }

  const double log_total = std::lgamma(static_cast<double>(num_alternatives) + 1.0);
  const int maxd = table.max_distance_;
  std::vector<long double> lower_cdf(size);
  long double running = 0.0L;
  for (std::size_t j = 0; j < size; ++j) {
    running += prev[j];
    lower_cdf[j] = running;
  }
  table.log_counts_.resize(size);
  table.log_cumulative_.resize(size);
  for (int j = 0; j <= maxd; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    table.log_counts_[idx] = static_cast<double>(std::log(prev[idx])) + log_total;
    double log_cdf = 0.0;
    if (j < maxd) {
      log_cdf = (2 * j <= maxd) ? static_cast<double>(std::log(lower_cdf[idx]))
                                : static_cast<double>(std::log1p(-lower_cdf[static_cast<std::size_t>(maxd - j - 1)]));
    }
    table.log_cumulative_[idx] = log_cdf + log_total;
  }
  return table;
}

BigInt ball_size_paper(int k, int num_alternatives) {
  if (num_alternatives < 2) throw InvalidArgument("ball_size_paper: A must be >= 2");
  if (k < 0) throw InvalidArgument("ball_size_paper: k must be >= 0");
  const BigInt total = factorial(num_alternatives);
  BigInt power = 1;
  for (int i = 0; i < k; ++i) {
    power *= (num_alternatives - 1);
    if (power >= total) return total;
  }
  return power;
}

}  // namespace prefbound
