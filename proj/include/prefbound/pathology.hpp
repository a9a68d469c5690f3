#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prefbound/perm.hpp"

namespace prefbound {

/// Ordering of k >= 3 distinct alternatives on a circle, stored with its
/// minimum alternative first so that rotations compare equal.
class CircularPermutation {
 public:
  explicit CircularPermutation(std::vector<int> alternatives);

  [[nodiscard]] int size() const { return static_cast<int>(alternatives_.size()); }
  [[nodiscard]] std::span<const int> alternatives() const { return alternatives_; }

  friend bool operator==(const CircularPermutation&, const CircularPermutation&) = default;

 private:
  std::vector<int> alternatives_;
};

/// The k linear readings of the circle; entry r starts at alternatives()[r].
/// Entry 0 ranks the minimum alternative first and is the one banned by the
/// minimum-index convention.
std::vector<SubPreference> necessary_subpreferences(const CircularPermutation& cycle);

/// Where a circulant pathology was found: `individuals[r]` restricts to
/// rotation r of `cycle` on the alternatives in `subset`.
struct CirculantWitness {
  std::vector<int> subset;
  CircularPermutation cycle;
  std::vector<int> individuals;
};

struct DetectorLimits {
  /// Upper bound on C(A, k) * I restriction evaluations per profile.
  std::uint64_t max_work = 50'000'000;
};

/// Reusable circulant-pathology search over a fixed (A, k).
///
/// For every k-subset of alternatives, each individual's restriction is
/// folded into its rotation class (keyed by the circular order) and the
/// rotation it realizes; the search stops at the first class whose k
/// rotations are all covered.
class CirculantDetector {
 public:
  CirculantDetector(int num_alternatives, int k, DetectorLimits limits = {});

  /// `positions` holds I rows of A entries, row i being the inverse
  /// permutation (rank of each alternative) of individual i.
  bool contains(std::span<const int> positions, int num_individuals, CirculantWitness* witness = nullptr);

  [[nodiscard]] int num_alternatives() const { return num_alternatives_; }
  [[nodiscard]] int k() const { return k_; }

 private:
  int num_alternatives_;
  int k_;
  DetectorLimits limits_;
  std::vector<int> subset_;
  std::vector<int> local_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> masks_;
  std::vector<int> first_individual_;
};

/// Searches `profile` for a size-k circulant pathology.
/// Throws InvalidArgument unless 3 <= k <= min(I, A), CapacityError when the
/// search exceeds `limits`.
std::optional<CirculantWitness> find_circulant(const Profile& profile, int k, DetectorLimits limits = {});

bool contains_circulant(const Profile& profile, int k, DetectorLimits limits = {});

struct EventBResult {
  bool holds = false;
  /// d >= A-1: the union of events is empty.
  bool vacuous = false;

  explicit operator bool() const { return holds; }
};

/// Whether p ranks some low-index alternative high enough to carry a banned
/// sub-preference: for some n in 1..A-d-1, alternative n-1 sits in the first
/// A-d-n positions.
EventBResult event_B_holds(const Preference& p, int d);

}  // namespace prefbound
