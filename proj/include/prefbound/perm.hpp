#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "prefbound/rng.hpp"

namespace prefbound {

/// Strict order over A alternatives, stored as a permutation of 0..A-1.
/// Position 0 holds the most-preferred alternative.
class Preference {
 public:
  /// Throws InvalidArgument unless `ranking` is a permutation of 0..size-1.
  explicit Preference(std::vector<int> ranking);

  static Preference identity(int num_alternatives);

  [[nodiscard]] int size() const { return static_cast<int>(ranking_.size()); }
  [[nodiscard]] std::span<const int> ranking() const { return ranking_; }
  [[nodiscard]] int operator[](std::size_t position) const { return ranking_[position]; }

  /// Inverse permutation: positions()[a] is the rank of alternative a.
  [[nodiscard]] std::vector<int> positions() const;

  friend bool operator==(const Preference&, const Preference&) = default;
  friend auto operator<=>(const Preference&, const Preference&) = default;

 private:
  std::vector<int> ranking_;
};

/// Ordered list of distinct alternatives; the restriction of a preference
/// to a subset.
class SubPreference {
 public:
  explicit SubPreference(std::vector<int> ordered_subset);

  [[nodiscard]] int size() const { return static_cast<int>(order_.size()); }
  [[nodiscard]] std::span<const int> order() const { return order_; }
  [[nodiscard]] int operator[](std::size_t position) const { return order_[position]; }

  friend bool operator==(const SubPreference&, const SubPreference&) = default;
  friend auto operator<=>(const SubPreference&, const SubPreference&) = default;

 private:
  std::vector<int> order_;
};

/// Ordered collection of I >= 1 preferences over a common set of alternatives.
class Profile {
 public:
  Profile(int num_alternatives, std::vector<Preference> preferences);

  [[nodiscard]] int num_alternatives() const { return num_alternatives_; }
  [[nodiscard]] int num_individuals() const { return static_cast<int>(preferences_.size()); }
  [[nodiscard]] const std::vector<Preference>& preferences() const { return preferences_; }
  [[nodiscard]] const Preference& operator[](std::size_t i) const { return preferences_[i]; }

  /// Number of distinct rankings in the profile.
  [[nodiscard]] std::size_t unique_count() const;

 private:
  int num_alternatives_;
  std::vector<Preference> preferences_;
};

/// Minimum number of adjacent transpositions turning p into q (the number
/// of discordant pairs). O(A log A).
std::int64_t kendall_distance(const Preference& p, const Preference& q);

/// Alternatives of `subset` in the relative order they take in p.
SubPreference restrict_to(const Preference& p, std::span<const int> subset);

/// Uniform over all A! permutations (Fisher-Yates).
Preference sample_preference(Rng& rng, int num_alternatives);

/// I independent uniform preferences.
Profile sample_profile(Rng& rng, int num_alternatives, int num_individuals);

}  // namespace prefbound
