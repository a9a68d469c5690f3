#include "prefbound/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include <fmt/format.h>

#include "prefbound/errors.hpp"
#include "prefbound/parallel.hpp"
#include "prefbound/perm.hpp"
#include "prefbound/permutohedron.hpp"

namespace prefbound {

namespace {

constexpr std::uint64_t kMcChunk = 8192;

ExactFraction reduce(std::uint64_t num, std::uint64_t den) {
  const auto g = std::gcd(num, den);
  return g == 0 ? ExactFraction{0, 1} : ExactFraction{num / g, den / g};
}

// All permutations of 0..A-1 as inverse (position) arrays, in lexicographic
// order of the rankings.
std::vector<std::vector<int>> all_position_arrays(int A) {
  std::vector<int> r(static_cast<std::size_t>(A));
  std::iota(r.begin(), r.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(Preference(r).positions());
  } while (std::next_permutation(r.begin(), r.end()));
  return out;
}

std::uint64_t checked_factorial(int A, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (int i = 2; i <= A; ++i) {
    if (f > cap / static_cast<std::uint64_t>(i)) return cap + 1;
    f *= static_cast<std::uint64_t>(i);
  }
  return f;
}

std::string pass_or_fail(bool ok, const std::string& why) { return ok ? "pass" : "fail: " + why; }

}  // namespace

ExactFraction exact_pathology_probability(int A, int I, int k, const OracleLimits& limits) {
  if (A < 1 || I < 1) throw InvalidArgument("exact_pathology_probability: A and I must be >= 1");
  if (k < 3) throw InvalidArgument("exact_pathology_probability: k must be >= 3");
  if (k > A || k > I) return {0, 1};  // k distinct rotations over k alternatives are needed

  const std::uint64_t perms = checked_factorial(A, limits.max_profiles);
  std::uint64_t profiles = 1;
  for (int i = 0; i < I; ++i) {
    if (perms > limits.max_profiles || profiles > limits.max_profiles / perms) {
      throw CapacityError(fmt::format("exhaustive enumeration of ({}!)^{} profiles exceeds cap {}", A, I,
                                      limits.max_profiles));
    }
    profiles *= perms;
  }

  const auto table = all_position_arrays(A);
  const auto a = static_cast<std::size_t>(A);
  std::vector<int> positions(a * static_cast<std::size_t>(I));
  std::vector<std::size_t> digits(static_cast<std::size_t>(I), 0);
  for (std::size_t i = 0; i < digits.size(); ++i) std::copy(table[0].begin(), table[0].end(), positions.begin() + static_cast<std::ptrdiff_t>(i * a));

  CirculantDetector detector(A, k, limits.detector);
  std::uint64_t hits = 0;
  for (std::uint64_t n = 0; n < profiles; ++n) {
    if (detector.contains(positions, I)) ++hits;
    // odometer step; only changed rows are rewritten
    for (std::size_t i = digits.size(); i-- > 0;) {
      digits[i] = (digits[i] + 1) % table.size();
      const auto& row = table[digits[i]];
      std::copy(row.begin(), row.end(), positions.begin() + static_cast<std::ptrdiff_t>(i * a));
      if (digits[i] != 0) break;
    }
  }
  return reduce(hits, profiles);
}

McEstimate mc_pathology_probability(int A, int I, int k, std::uint64_t trials, std::uint64_t seed, int jobs,
                                    const DetectorLimits& limits) {
  if (trials < 1) throw InvalidArgument("mc_pathology_probability: trials must be >= 1");
  if (A < 1 || I < 1) throw InvalidArgument("mc_pathology_probability: A and I must be >= 1");
  if (k < 3) throw InvalidArgument("mc_pathology_probability: k must be >= 3");
  McEstimate out;
  out.trials = trials;
  out.seed = seed;
  if (k <= A && k <= I) {
    // Validate capacity once, up front.
    CirculantDetector probe(A, k, limits);
    (void)probe;
    const std::uint64_t chunks = (trials + kMcChunk - 1) / kMcChunk;
    std::vector<std::uint64_t> hits(chunks, 0);
    const Rng root(seed);
    parallel_for(chunks, jobs, [&](std::size_t c) {
      Rng rng = root.split(c);
      CirculantDetector detector(A, k, limits);
      const std::uint64_t begin = c * kMcChunk;
      const std::uint64_t end = std::min(trials, begin + kMcChunk);
      const auto a = static_cast<std::size_t>(A);
      std::vector<int> positions(a * static_cast<std::size_t>(I));
      std::vector<int> ranking(a);
      std::uint64_t local = 0;
      for (std::uint64_t t = begin; t < end; ++t) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(I); ++i) {
          std::iota(ranking.begin(), ranking.end(), 0);
          for (std::size_t j = a - 1; j > 0; --j) std::swap(ranking[j], ranking[rng.below(j + 1)]);
          for (std::size_t p = 0; p < a; ++p) positions[i * a + static_cast<std::size_t>(ranking[p])] = static_cast<int>(p);
        }
        if (detector.contains(positions, I)) ++local;
      }
      hits[c] = local;
    });
    out.hits = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  }
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(trials);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

ExactFraction enumerate_event_B(int A, int d, const OracleLimits& limits) {
  if (A < 1 || d < 1) throw InvalidArgument("enumerate_event_B: A and d must be >= 1");
  if (A > limits.max_permutation_alternatives) {
    throw CapacityError(fmt::format("enumerate_event_B: A={} exceeds enumeration cap {}", A,
                                    limits.max_permutation_alternatives));
  }
  std::vector<int> r(static_cast<std::size_t>(A));
  std::iota(r.begin(), r.end(), 0);
  std::uint64_t hits = 0, total = 0;
  do {
    ++total;
    if (event_B_holds(Preference(r), d)) ++hits;
  } while (std::next_permutation(r.begin(), r.end()));
  return reduce(hits, total);
}

std::uint64_t one_dim_distinct_orders(std::span<const double> locations) {
  const std::size_t n = locations.size();
  if (n == 0) throw InvalidArgument("one_dim_distinct_orders: need at least one location");
  std::set<double> distinct(locations.begin(), locations.end());
  if (distinct.size() != n) throw DegeneracyError("alternative locations coincide; perturb them");
  std::vector<double> midpoints;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) midpoints.push_back(0.5 * (locations[a] + locations[b]));
  }
  std::sort(midpoints.begin(), midpoints.end());
  if (std::adjacent_find(midpoints.begin(), midpoints.end()) != midpoints.end()) {
    throw DegeneracyError("two pairwise midpoints coincide; perturb the locations into generic position");
  }
  // One ideal point inside each cell cut out by the midpoints.
  std::vector<double> probes;
  if (midpoints.empty()) {
    probes.push_back(locations[0]);
  } else {
    probes.push_back(midpoints.front() - 1.0);
    for (std::size_t i = 0; i + 1 < midpoints.size(); ++i) probes.push_back(0.5 * (midpoints[i] + midpoints[i + 1]));
    probes.push_back(midpoints.back() + 1.0);
  }
  std::set<std::vector<int>> orders;
  std::vector<int> order(n);
  for (double w : probes) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      return std::abs(locations[static_cast<std::size_t>(x)] - w) < std::abs(locations[static_cast<std::size_t>(y)] - w);
    });
    orders.insert(order);
  }
  return orders.size();
}

std::vector<double> generic_line_locations(int A) {
  std::vector<double> out;
  for (int i = 0; i < A; ++i) out.push_back(std::ldexp(1.0, i) - 1.0);
  return out;
}

std::vector<SweepResult> verify_all(std::span<const BoundParams> grid, const VerifyBudget& budget) {
  // Which grid points carry the once-per-(A,d) and once-per-A checks.
  std::vector<char> first_ad(grid.size(), 0), first_a(grid.size(), 0);
  {
    std::set<std::pair<int, int>> seen_ad;
    std::set<int> seen_a;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      first_ad[g] = seen_ad.insert({grid[g].A, grid[g].d}).second;
      first_a[g] = seen_a.insert(grid[g].A).second;
    }
  }

  std::vector<std::vector<SweepResult>> per_point(grid.size());
  const Rng root(budget.seed);
  parallel_for(grid.size(), budget.jobs, [&](std::size_t g) {
    const BoundParams& p = grid[g];
    auto& rows = per_point[g];

    SweepResult bc{.kind = "verify_bound_c", .A = p.A, .I = p.I, .d = p.d};
    if (p.A < 1 || p.I < 1 || p.d < 1 || !(p.d < std::min(p.I, p.A - 1))) {
      bc.status = "skipped: requires d < min(I, A-1)";
    } else {
      const double bound = pathology_probability_lower_bound(p) * budget.bound_inflation;
      bc.value = bound;
      const int k = p.d + 2;
      try {
        const auto exact = exact_pathology_probability(p.A, p.I, k, budget.limits);
        bc.extra1 = exact.value();
        bc.extra2 = exact.value() - bound;
        bc.status = pass_or_fail(bound <= exact.value() + 1e-12, "bound exceeds exact probability");
      } catch (const CapacityError&) {
        const std::uint64_t seed = root.split(g).seed();
        try {
          const auto mc = mc_pathology_probability(p.A, p.I, k, budget.trials, seed, 1, budget.limits.detector);
          const double upper = mc.estimate + 4.0 * mc.std_error;
          bc.trials = mc.trials;
          bc.seed = seed;
          bc.extra1 = mc.estimate;
          bc.extra2 = upper - bound;
          bc.status = pass_or_fail(bound <= upper + 1e-12, "bound exceeds MC estimate + 4 SE");
        } catch (const CapacityError& e) {
          bc.status = std::string("skipped: ") + e.what();
        }
      }
    }
    rows.push_back(std::move(bc));

    if (first_ad[g] && p.d >= 1 && p.A >= 1) {
      SweepResult bf{.kind = "verify_banned_fraction", .A = p.A, .d = p.d};
      if (p.d >= p.A - 1) {
        bf.status = "skipped: requires d < A-1";
      } else if (p.A > budget.max_enumeration_alternatives) {
        bf.status = "skipped: A above enumeration cap";
      } else {
        const double pb = banned_probability(p.A, p.d);
        const double enumerated = enumerate_event_B(p.A, p.d, budget.limits).value();
        bf.value = pb;
        bf.extra1 = enumerated;
        bf.extra2 = std::abs(pb - enumerated);
        bf.status = pass_or_fail(std::abs(pb - enumerated) <= 1e-9, "recursion differs from enumeration");
      }
      rows.push_back(std::move(bf));

      if (p.d == 1 && p.A >= 2) {
        SweepResult rl{.kind = "verify_rhat_line", .A = p.A, .d = p.d};
        if (p.A > budget.max_enumeration_alternatives) {
          rl.status = "skipped: A above enumeration cap";
        } else {
          const auto rb = max_representable_upper_bound(p.A, 1);
          const auto locations = generic_line_locations(p.A);
          const auto line_orders = static_cast<double>(one_dim_distinct_orders(locations));
          rl.value = rb.rhat_count.to_double();
          rl.extra1 = line_orders;
          rl.extra2 = *rl.value - line_orders;
          rl.status = pass_or_fail(*rl.value >= line_orders, "rhat below realizable 1-D order count");
        }
        rows.push_back(std::move(rl));
      }
    }

    if (first_a[g] && p.A >= 1) {
      SweepResult bs{.kind = "verify_ball_sizes", .A = p.A};
      if (p.A > budget.max_bfs_alternatives) {
        bs.status = "skipped: A above BFS cap";
      } else {
        const auto bfs = ball_sizes_bfs(p.A);
        const auto table = mahonian_counts(p.A);
        int mismatches = 0;
        for (std::size_t kk = 0; kk < bfs.size(); ++kk) {
          if (table.cumulative(static_cast<int>(kk)).value() != bfs[kk]) ++mismatches;
        }
        bs.value = static_cast<double>(bfs.size());
        bs.extra1 = mismatches;
        bs.status = pass_or_fail(mismatches == 0, "Mahonian cumulative differs from BFS");
      }
      rows.push_back(std::move(bs));
    }
  });

  std::vector<SweepResult> out;
  for (auto& rows : per_point) {
    for (auto& r : rows) out.push_back(std::move(r));
  }
  return out;
}

std::string summarize_report(std::span<const SweepResult> rows) {
  std::size_t pass = 0, fail = 0, skipped = 0;
  std::string failures;
  for (const auto& r : rows) {
    if (is_failure(r)) {
      ++fail;
      failures += fmt::format("  FAIL {} A={} I={} d={}: {}\n", r.kind, r.A ? std::to_string(*r.A) : "-",
                              r.I ? std::to_string(*r.I) : "-", r.d ? std::to_string(*r.d) : "-", r.status);
    } else if (is_skipped(r)) {
      ++skipped;
    } else {
      ++pass;
    }
  }
  return fmt::format("verify: {} passed, {} failed, {} skipped\n", pass, fail, skipped) + failures;
}

}  // namespace prefbound
