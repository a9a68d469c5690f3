#include "prefbound/pathology.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "prefbound/errors.hpp"

namespace prefbound {

namespace {

constexpr int kMaxCycleLength = 16;  // keys pack 4 bits per alternative

std::uint64_t binomial_saturating(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Exact at every step: C(n-k+i, i) is an integer. acc <= cap before each
  // multiply keeps the product in range for any practical n.
  std::uint64_t acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    if (acc > cap) return cap + 1;
  }
  return acc;
}

}  // namespace

CircularPermutation::CircularPermutation(std::vector<int> alternatives) : alternatives_(std::move(alternatives)) {
  if (alternatives_.size() < 3) throw InvalidArgument("circular permutation needs k >= 3 alternatives");
  std::vector<int> sorted = alternatives_;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0) throw InvalidArgument("alternative index must be non-negative");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("circular permutation repeats an alternative");
  }
  std::rotate(alternatives_.begin(), std::min_element(alternatives_.begin(), alternatives_.end()), alternatives_.end());
}

std::vector<SubPreference> necessary_subpreferences(const CircularPermutation& cycle) {
  const auto alts = cycle.alternatives();
  std::vector<SubPreference> out;
  out.reserve(alts.size());
  std::vector<int> reading(alts.begin(), alts.end());
  for (std::size_t r = 0; r < alts.size(); ++r) {
    out.emplace_back(reading);
    std::rotate(reading.begin(), reading.begin() + 1, reading.end());
  }
  return out;
}

CirculantDetector::CirculantDetector(int num_alternatives, int k, DetectorLimits limits)
    : num_alternatives_(num_alternatives), k_(k), limits_(limits) {
  if (k < 3 || k > num_alternatives) {
    throw InvalidArgument("circulant size k=" + std::to_string(k) + " must satisfy 3 <= k <= A=" +
                          std::to_string(num_alternatives));
  }
  if (k > kMaxCycleLength) throw CapacityError("circulant size k > 16 is not supported");
  subset_.resize(static_cast<std::size_t>(k));
  local_.resize(static_cast<std::size_t>(k));
}

bool CirculantDetector::contains(std::span<const int> positions, int num_individuals, CirculantWitness* witness) {
  const int a_count = num_alternatives_;
  if (positions.size() != static_cast<std::size_t>(num_individuals) * static_cast<std::size_t>(a_count)) {
    throw InvalidArgument("position buffer does not match I x A");
  }
  if (num_individuals < k_) return false;  // pigeonhole: k distinct rotations needed
  const std::uint64_t subsets = binomial_saturating(a_count, k_, limits_.max_work);
  if (subsets > limits_.max_work / static_cast<std::uint64_t>(num_individuals)) {
    throw CapacityError("circulant search over C(" + std::to_string(a_count) + "," + std::to_string(k_) + ") x " +
                        std::to_string(num_individuals) + " restrictions exceeds work cap " +
                        std::to_string(limits_.max_work));
  }

  const auto k = static_cast<std::size_t>(k_);
  const std::uint32_t full = (k_ == 32) ? ~0U : ((1U << k_) - 1U);
  keys_.resize(static_cast<std::size_t>(num_individuals));
  masks_.resize(static_cast<std::size_t>(num_individuals));
  first_individual_.resize(static_cast<std::size_t>(num_individuals) * k);

  std::iota(subset_.begin(), subset_.end(), 0);
  while (true) {
    std::size_t classes = 0;
    for (int i = 0; i < num_individuals; ++i) {
      const int* row = positions.data() + static_cast<std::ptrdiff_t>(i) * a_count;
      // Local subset indices sorted by this individual's ranking.
      for (std::size_t j = 0; j < k; ++j) {
        const int rank = row[subset_[j]];
        std::size_t m = j;
        while (m > 0 && row[subset_[static_cast<std::size_t>(local_[m - 1])]] > rank) {
          local_[m] = local_[m - 1];
          --m;
        }
        local_[m] = static_cast<int>(j);
      }
      std::size_t offset = 0;
      while (local_[offset] != 0) ++offset;
      std::uint64_t key = 0;
      for (std::size_t j = 0; j < k; ++j) key = (key << 4) | static_cast<std::uint64_t>(local_[(offset + j) % k]);
      const std::size_t rotation = (k - offset) % k;

      std::size_t c = 0;
      while (c < classes && keys_[c] != key) ++c;
      if (c == classes) {
        keys_[c] = key;
        masks_[c] = 0;
        ++classes;
      }
      const std::uint32_t bit = 1U << rotation;
      if (!(masks_[c] & bit)) {
        masks_[c] |= bit;
        first_individual_[c * k + rotation] = i;
        if (masks_[c] == full) {
          if (witness != nullptr) {
            std::vector<int> cycle(k);
            for (std::size_t j = 0; j < k; ++j) {
              const auto local = static_cast<std::size_t>((key >> (4 * (k - 1 - j))) & 0xF);
              cycle[j] = subset_[local];
            }
            witness->subset = subset_;
            witness->cycle = CircularPermutation(std::move(cycle));
            witness->individuals.assign(first_individual_.begin() + static_cast<std::ptrdiff_t>(c * k),
                                        first_individual_.begin() + static_cast<std::ptrdiff_t>((c + 1) * k));
          }
          return true;
        }
      }
    }

    // next k-combination in lexicographic order
    int j = k_ - 1;
    while (j >= 0 && subset_[static_cast<std::size_t>(j)] == a_count - k_ + j) --j;
    if (j < 0) break;
    ++subset_[static_cast<std::size_t>(j)];
    for (auto m = static_cast<std::size_t>(j) + 1; m < k; ++m) subset_[m] = subset_[m - 1] + 1;
  }
  return false;
}

std::optional<CirculantWitness> find_circulant(const Profile& profile, int k, DetectorLimits limits) {
  const int a_count = profile.num_alternatives();
  const int i_count = profile.num_individuals();
  if (k < 3 || k > std::min(i_count, a_count)) {
    throw InvalidArgument("contains_circulant: k=" + std::to_string(k) + " violates 3 <= k <= min(I, A) = " +
                          std::to_string(std::min(i_count, a_count)));
  }
  std::vector<int> positions;
  positions.reserve(static_cast<std::size_t>(a_count) * static_cast<std::size_t>(i_count));
  for (const auto& p : profile.preferences()) {
    const auto pos = p.positions();
    positions.insert(positions.end(), pos.begin(), pos.end());
  }
  CirculantDetector detector(a_count, k, limits);
  CirculantWitness witness{{}, CircularPermutation({0, 1, 2}), {}};
  if (detector.contains(positions, i_count, &witness)) return witness;
  return std::nullopt;
}

bool contains_circulant(const Profile& profile, int k, DetectorLimits limits) {
  return find_circulant(profile, k, limits).has_value();
}

EventBResult event_B_holds(const Preference& p, int d) {
  if (d < 1) throw InvalidArgument("event_B_holds: d must be >= 1");
  const int a_count = p.size();
  if (d >= a_count - 1) return {false, true};
  const auto pos = p.positions();
  for (int n = 1; n <= a_count - d - 1; ++n) {
    if (pos[static_cast<std::size_t>(n - 1)] < a_count - d - n) return {true, false};
  }
  return {false, false};
}

}  // namespace prefbound
