#include "prefbound/perm.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "prefbound/errors.hpp"

namespace prefbound {

namespace {

// Counts inversions of `values` by merge sort; `scratch` must match in size.
std::int64_t merge_count(std::span<int> values, std::span<int> scratch) {
  const std::size_t n = values.size();
  if (n < 2) return 0;
  const std::size_t mid = n / 2;
  std::int64_t count = merge_count(values.first(mid), scratch.first(mid)) +
                       merge_count(values.subspan(mid), scratch.subspan(mid));
  std::size_t i = 0, j = mid, out = 0;
  while (i < mid && j < n) {
    if (values[j] < values[i]) {
      count += static_cast<std::int64_t>(mid - i);
      scratch[out++] = values[j++];
    } else {
      scratch[out++] = values[i++];
    }
  }
  while (i < mid) scratch[out++] = values[i++];
  while (j < n) scratch[out++] = values[j++];
  std::copy(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(n), values.begin());
  return count;
}

}  // namespace

Preference::Preference(std::vector<int> ranking) : ranking_(std::move(ranking)) {
  if (ranking_.empty()) throw InvalidArgument("preference must rank at least one alternative");
  std::vector<char> seen(ranking_.size(), 0);
  for (int a : ranking_) {
    if (a < 0 || a >= size() || seen[static_cast<std::size_t>(a)]) {
      throw InvalidArgument("ranking is not a permutation of 0.." + std::to_string(size() - 1));
    }
    seen[static_cast<std::size_t>(a)] = 1;
  }
}

Preference Preference::identity(int num_alternatives) {
  if (num_alternatives < 1) throw InvalidArgument("A must be >= 1");
  std::vector<int> r(static_cast<std::size_t>(num_alternatives));
  std::iota(r.begin(), r.end(), 0);
  return Preference(std::move(r));
}

std::vector<int> Preference::positions() const {
  std::vector<int> pos(ranking_.size());
  for (std::size_t i = 0; i < ranking_.size(); ++i) pos[static_cast<std::size_t>(ranking_[i])] = static_cast<int>(i);
  return pos;
}

SubPreference::SubPreference(std::vector<int> ordered_subset) : order_(std::move(ordered_subset)) {
  std::set<int> seen;
  for (int a : order_) {
    if (a < 0) throw InvalidArgument("alternative index must be non-negative");
    if (!seen.insert(a).second) throw InvalidArgument("sub-preference repeats alternative " + std::to_string(a));
  }
}

Profile::Profile(int num_alternatives, std::vector<Preference> preferences)
    : num_alternatives_(num_alternatives), preferences_(std::move(preferences)) {
  if (num_alternatives_ < 1) throw InvalidArgument("A must be >= 1");
  if (preferences_.empty()) throw InvalidArgument("profile needs I >= 1 individuals");
  for (const auto& p : preferences_) {
    if (p.size() != num_alternatives_) throw InvalidArgument("preference size differs from profile A");
  }
}

std::size_t Profile::unique_count() const {
  std::set<Preference> distinct(preferences_.begin(), preferences_.end());
  return distinct.size();
}

std::int64_t kendall_distance(const Preference& p, const Preference& q) {
  if (p.size() != q.size()) throw InvalidArgument("kendall_distance: preferences differ in A");
  const auto q_pos = q.positions();
  std::vector<int> relative(static_cast<std::size_t>(p.size()));
  for (std::size_t i = 0; i < relative.size(); ++i) relative[i] = q_pos[static_cast<std::size_t>(p[i])];
  std::vector<int> scratch(relative.size());
  return merge_count(relative, scratch);
}

SubPreference restrict_to(const Preference& p, std::span<const int> subset) {
  if (subset.empty()) throw InvalidArgument("restrict_to: subset must be nonempty");
  std::vector<char> in_subset(static_cast<std::size_t>(p.size()), 0);
  for (int a : subset) {
    if (a < 0 || a >= p.size()) throw InvalidArgument("restrict_to: alternative " + std::to_string(a) + " out of range");
    in_subset[static_cast<std::size_t>(a)] = 1;
  }
  std::vector<int> order;
  order.reserve(subset.size());
  for (int a : p.ranking()) {
    if (in_subset[static_cast<std::size_t>(a)]) order.push_back(a);
  }
  return SubPreference(std::move(order));
}

Preference sample_preference(Rng& rng, int num_alternatives) {
  if (num_alternatives < 1) throw InvalidArgument("sample_preference: A must be >= 1");
  std::vector<int> r(static_cast<std::size_t>(num_alternatives));
  std::iota(r.begin(), r.end(), 0);
  for (std::size_t i = r.size() - 1; i > 0; --i) {
    std::swap(r[i], r[rng.below(i + 1)]);
  }
  return Preference(std::move(r));
}

Profile sample_profile(Rng& rng, int num_alternatives, int num_individuals) {
  if (num_individuals < 1) throw InvalidArgument("sample_profile: I must be >= 1");
  std::vector<Preference> prefs;
  prefs.reserve(static_cast<std::size_t>(num_individuals));
  for (int i = 0; i < num_individuals; ++i) prefs.push_back(sample_preference(rng, num_alternatives));
  return Profile(num_alternatives, std::move(prefs));
}

}  // namespace prefbound
