#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "prefbound/errors.hpp"
#include "prefbound/permutohedron.hpp"

using namespace prefbound;

namespace {

// Brute-force histogram of inversion numbers over all A! permutations.
std::vector<std::uint64_t> inversion_histogram(int a) {
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(a * (a - 1) / 2) + 1, 0);
  std::vector<int> r(static_cast<std::size_t>(a));
  std::iota(r.begin(), r.end(), 0);
  do {
    std::size_t inv = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = i + 1; j < r.size(); ++j) inv += r[i] > r[j];
    }
    ++hist[inv];
  } while (std::next_permutation(r.begin(), r.end()));
  return hist;
}

}  // namespace

TEST_CASE("adjacent_neighbors of the identity over four alternatives") {
  const auto n = adjacent_neighbors(Preference({0, 1, 2, 3}));
  const std::set<Preference> got(n.begin(), n.end());
  const std::set<Preference> want{Preference({1, 0, 2, 3}), Preference({0, 2, 1, 3}), Preference({0, 1, 3, 2})};
  CHECK(got == want);
  CHECK(adjacent_neighbors(Preference({0})).empty());
}

TEST_CASE("adjacent_neighbors count, distance and symmetry") {
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    const int a = 2 + static_cast<int>(rng.below(7));
    const auto p = sample_preference(rng, a);
    const auto n = adjacent_neighbors(p);
    REQUIRE(n.size() == static_cast<std::size_t>(a - 1));
    REQUIRE(std::set<Preference>(n.begin(), n.end()).size() == n.size());
    for (const auto& q : n) {
      REQUIRE(kendall_distance(p, q) == 1);
      const auto back = adjacent_neighbors(q);
      REQUIRE(std::find(back.begin(), back.end(), p) != back.end());
    }
  }
}

TEST_CASE("ball_sizes_bfs") {
  CHECK(ball_sizes_bfs(4) == std::vector<std::uint64_t>{1, 4, 9, 15, 20, 23, 24});
  CHECK(ball_sizes_bfs(2) == std::vector<std::uint64_t>{1, 2});
  CHECK(ball_sizes_bfs(3) == std::vector<std::uint64_t>{1, 3, 5, 6});
  CHECK(ball_sizes_bfs(1) == std::vector<std::uint64_t>{1});
  CHECK_THROWS_AS(ball_sizes_bfs(8), CapacityError);
}

TEST_CASE("mahonian_counts matches brute-force inversion histogram") {
  const auto t4 = mahonian_counts(4);
  REQUIRE(t4.is_exact());
  CHECK(t4.counts() == std::vector<BigInt>{1, 3, 5, 6, 5, 3, 1});
  CHECK(mahonian_counts(1).counts() == std::vector<BigInt>{1});
  CHECK(mahonian_counts(5).cumulative(10).value() == 120);
  for (int a = 1; a <= 8; ++a) {
    const auto hist = inversion_histogram(a);
    const auto table = mahonian_counts(a);
    REQUIRE(table.counts().size() == hist.size());
    for (std::size_t j = 0; j < hist.size(); ++j) REQUIRE(table.counts()[j] == hist[j]);
  }
}

TEST_CASE("cumulative Mahonian equals BFS ball sizes for A <= 7") {
  for (int a = 1; a <= 7; ++a) {
    const auto bfs = ball_sizes_bfs(a);
    const auto table = mahonian_counts(a);
    for (std::size_t k = 0; k < bfs.size(); ++k) REQUIRE(table.cumulative(static_cast<int>(k)).value() == bfs[k]);
  }
}

TEST_CASE("Mahonian symmetry and total mass") {
  for (int a = 1; a <= 40; ++a) {
    const auto t = mahonian_counts(a);
    const int maxd = t.max_distance();
    BigInt sum = 0;
    for (int j = 0; j <= maxd; ++j) {
      REQUIRE(t.counts()[static_cast<std::size_t>(j)] == t.counts()[static_cast<std::size_t>(maxd - j)]);
      sum += t.counts()[static_cast<std::size_t>(j)];
    }
    REQUIRE(t.counts()[0] == 1);
    REQUIRE(sum == factorial(a));
    REQUIRE(t.cumulative(maxd + 5).value() == factorial(a));
  }
}

TEST_CASE("log-space Mahonian agrees with exact counts") {
  for (int a : {12, 25, 60}) {
    const auto exact = mahonian_counts(a);
    const auto logged = mahonian_counts(a, /*log_space_threshold=*/5);
    REQUIRE_FALSE(logged.is_exact());
    for (int j = 0; j <= exact.max_distance(); ++j) {
      const double want = log_of(exact.counts()[static_cast<std::size_t>(j)]);
      REQUIRE(logged.count(j).log() == doctest::Approx(want).epsilon(1e-12));
      const double want_cum = exact.cumulative(j).log();
      REQUIRE(logged.cumulative(j).log() == doctest::Approx(want_cum).epsilon(1e-12));
    }
  }
}

TEST_CASE("ball_size_paper") {
  CHECK(ball_size_paper(0, 4) == 1);
  CHECK(ball_size_paper(1, 4) == 3);
  CHECK(ball_size_paper(10, 4) == 24);
  CHECK(ball_size_paper(500, 30) == factorial(30));
  CHECK_THROWS_AS(ball_size_paper(1, 1), InvalidArgument);
}

TEST_CASE("tree ball size undercounts the exact ball at k = 1") {
  // exact closed ball is 1 + (A-1); the tree approximation gives A-1
  CHECK(mahonian_counts(4).cumulative(1).value() == 4);
  CHECK(ball_size_paper(1, 4) == 3);
  for (int a = 2; a <= 12; ++a) CHECK(mahonian_counts(a).cumulative(1).value() == ball_size_paper(1, a) + 1);
}
