// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Optional argv[1]: path to the prefbound CLI, used by the determinism check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "prefbound/bounds.hpp"
#include "prefbound/oracles.hpp"
#include "prefbound/perm.hpp"
#include "prefbound/permutohedron.hpp"
#include "prefbound/rng.hpp"
#include "prefbound/sweep.hpp"

using namespace prefbound;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

BoundParams make(int A, int I, int d) {
  BoundParams p;
  p.A = A;
  p.I = I;
  p.d = d;
  return p;
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

Outcome pathology_exact_value() {
  Outcome o;
  const double b = pathology_probability_lower_bound(make(3, 3, 1));
  o.require(std::abs(b - 1.0 / 36.0) <= 1e-12, "bound " + fmt_double(b) + " != 1/36");
  const auto exact = exact_pathology_probability(3, 3, 3);
  o.require(exact == ExactFraction{1, 18}, "exhaustive probability is not 1/18");
  o.require(b <= exact.value(), "bound exceeds exhaustive probability");
  return o;
}

Outcome pathology_dominance_grid() {
  Outcome o;
  for (int A = 3; A <= 4; ++A)
    for (int I = 2; I <= 4; ++I) {
      const auto p = make(A, I, 1);
      if (!(p.d < std::min(I, A - 1))) continue;
      const double b = pathology_probability_lower_bound(p);
      const double e = exact_pathology_probability(A, I, 3).value();
      o.require(e >= b, "exhaustive < bound at A=" + std::to_string(A) + " I=" + std::to_string(I));
    }
  std::vector<BoundParams> grid;
  for (int A = 3; A <= 6; ++A)
    for (int I = 2; I <= 12; ++I)
      for (int d = 1; d <= 2; ++d)
        if (d < std::min(I, A - 1)) grid.push_back(make(A, I, d));
  Rng root(2024);
  int checked = 0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const auto& p = grid[g];
    const double b = pathology_probability_lower_bound(p);
    const auto mc = mc_pathology_probability(p.A, p.I, p.d + 2, 100'000, root.split(g).seed());
    ++checked;
    o.require(mc.estimate + 4 * mc.std_error >= b, "MC + 4 SE < bound at A=" + std::to_string(p.A) +
                                                      " I=" + std::to_string(p.I) + " d=" + std::to_string(p.d));
  }
  if (o.ok) o.detail = std::to_string(checked) + " MC grid points";
  return o;
}

Outcome pathology_asymptote() {
  Outcome o;
  double prev = 0.0;
  for (int I = 3; I <= 200; ++I) {
    const double b = pathology_probability_lower_bound(make(3, I, 1));
    o.require(b >= prev, "decreases at I=" + std::to_string(I));
    prev = b;
  }
  o.require(prev > 0.99, "bound at I=200 is " + fmt_double(prev));
  if (o.ok) o.detail = "I=200: " + fmt_double(prev);
  return o;
}

Outcome banned_fraction_exact() {
  Outcome o;
  for (int A = 3; A <= 8; ++A)
    for (int d = 1; d < A - 1; ++d) {
      const double r = banned_probability(A, d);
      const double e = enumerate_event_B(A, d).value();
      o.require(std::abs(r - e) <= 1e-9, "mismatch at A=" + std::to_string(A) + " d=" + std::to_string(d));
    }
  o.require(std::abs(banned_probability(3, 1) - 1.0 / 3.0) <= 1e-9, "P(B)(3,1) != 1/3");
  o.require(std::abs(banned_probability(4, 1) - 2.0 / 3.0) <= 1e-9, "P(B)(4,1) != 2/3");
  return o;
}

Outcome rhat_line_consistency() {
  Outcome o;
  for (int A = 3; A <= 8; ++A) {
    const auto r = max_representable_upper_bound(A, 1).rhat_count.value();
    const auto line = one_dim_distinct_orders(generic_line_locations(A));
    const auto expected = static_cast<std::uint64_t>(A * (A - 1) / 2 + 1);
    o.require(line == expected, "1-D order count at A=" + std::to_string(A));
    o.require(r >= line, "rhat below 1-D order count at A=" + std::to_string(A));
    if (A == 3) o.require(r == 4 && line == 4, "A=3 should give 4 and 4");
  }
  return o;
}

Outcome info_loss_exact_value() {
  Outcome o;
  const auto b = info_loss_lower_bound(make(3, 0, 1));
  o.require(std::abs(b.expectation_lb - 1.0 / 3.0) <= 1e-12, "expectation " + fmt_double(b.expectation_lb));
  o.require(std::abs(b.scaled_lb - 1.0 / 9.0) <= 1e-12, "scaled " + fmt_double(b.scaled_lb));
  for (int A = 2; A <= 30; ++A)
    for (int d = A - 1; d <= A + 2; ++d)
      o.require(info_loss_lower_bound(make(A, 0, d)).expectation_lb == 0.0,
                "nonzero at A=" + std::to_string(A) + " d=" + std::to_string(d));
  return o;
}

Outcome seven_percent_on_grid() {
  Outcome o;
  double best = 0.0;
  int best_A = 0, best_d = 0;
  for (int A = 5; A <= 50; ++A)
    for (int d = 1; d <= A - 2; ++d) {
      const auto b = info_loss_lower_bound(make(A, 0, d));
      if (b.scaled_lb > best) {
        best = b.scaled_lb;
        best_A = A;
        best_d = d;
      }
    }
  o.require(best >= 0.07, "max scaled bound " + fmt_double(best));
  o.detail = "max scaled " + fmt_double(best) + " at A=" + std::to_string(best_A) + " d=" + std::to_string(best_d);
  return o;
}

Outcome permutohedron_balls() {
  Outcome o;
  for (int A = 1; A <= 7; ++A) {
    const auto bfs = ball_sizes_bfs(A);
    const auto table = mahonian_counts(A);
    for (std::size_t k = 0; k < bfs.size(); ++k)
      o.require(table.cumulative(static_cast<int>(k)).value() == bfs[k], "ball mismatch at A=" + std::to_string(A));
  }
  const auto four = mahonian_counts(4).counts();
  const std::vector<BigInt> want{1, 3, 5, 6, 5, 3, 1};
  o.require(four == want, "A=4 table is not [1,3,5,6,5,3,1]");
  return o;
}

Outcome metric_properties() {
  Outcome o;
  Rng rng(99);
  for (int t = 0; t < 10'000; ++t) {
    const int A = 1 + static_cast<int>(rng.below(7));
    const auto p = sample_preference(rng, A), q = sample_preference(rng, A), r = sample_preference(rng, A);
    const auto pq = kendall_distance(p, q), qp = kendall_distance(q, p), pr = kendall_distance(p, r),
               qr = kendall_distance(q, r);
    o.require(kendall_distance(p, p) == 0, "d(p,p) != 0");
    o.require((pq == 0) == (p == q), "identity of indiscernibles");
    o.require(pq == qp, "symmetry");
    o.require(pr <= pq + qr, "triangle inequality");
  }
  // Graph distance by BFS from every source.
  for (int A = 1; A <= 5; ++A) {
    std::vector<int> base(static_cast<std::size_t>(A));
    std::iota(base.begin(), base.end(), 0);
    std::vector<Preference> all;
    do {
      all.emplace_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    for (const auto& src : all) {
      std::map<Preference, int> dist{{src, 0}};
      std::vector<Preference> frontier{src};
      while (!frontier.empty()) {
        std::vector<Preference> next;
        for (const auto& u : frontier)
          for (const auto& v : adjacent_neighbors(u))
            if (dist.emplace(v, dist[u] + 1).second) next.push_back(v);
        frontier = std::move(next);
      }
      for (const auto& [v, dv] : dist) o.require(kendall_distance(src, v) == dv, "BFS distance mismatch");
    }
  }
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const char* cli) {
  Outcome o;
  const std::vector<SweepSpec> specs = [] {
    std::vector<SweepSpec> v;
    auto verify = default_spec(Subcommand::verify);
    verify.A = IntRange::parse("3:6");
    verify.I = IntRange::parse("2:6");
    verify.trials = 20'000;
    verify.seed = 7;
    v.push_back(verify);
    auto threaded = verify;
    threaded.jobs = 4;
    v.push_back(threaded);
    v.push_back(default_spec(Subcommand::bound_c));
    v.push_back(default_spec(Subcommand::rhat));
    v.push_back(default_spec(Subcommand::info_loss));
    return v;
  }();
  std::string first_verify;
  for (const auto& s : specs) {
    const std::string a = to_csv(run_to_document(s));
    o.require(a == to_csv(run_to_document(s)), "library output differs between runs");
    if (s.subcommand != Subcommand::verify) continue;
    if (first_verify.empty()) first_verify = a;
    o.require(a == first_verify, "verify output depends on jobs");
  }
  if (cli == nullptr) {
    o.detail = "library only (no CLI path given)";
    return o;
  }
  const auto dir = std::filesystem::temp_directory_path() / "prefbound_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> runs{
      "verify --A 3:6 --I 2:6 --d 1:2 --trials 20000 --seed 7 --jobs 2",
      "bound-c --A 10:50:10 --I 2:100 --d 1:5",
      "info-loss --A 5:50:5 --d 1:48 --ball-mode exact",
  };
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto file = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep) + ".csv");
      const std::string cmd = std::string("\"") + cli + "\" " + runs[i] + " --out \"" + file.string() + "\"";
      const int rc = std::system(cmd.c_str());
      o.require(rc == 0, "CLI exited nonzero: " + runs[i]);
      outputs[rep] = slurp(file);
    }
    o.require(!outputs[0].empty() && outputs[0] == outputs[1], "CLI output differs: " + runs[i]);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const char* cli = argc > 1 ? argv[1] : nullptr;
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"pathology bound exact value at (3,3,1)", 1, pathology_exact_value},
      {"pathology bound dominated by oracles", 300, pathology_dominance_grid},
      {"pathology bound tends to one", 1, pathology_asymptote},
      {"banned fraction matches enumeration", 30, banned_fraction_exact},
      {"rhat consistent with 1-D representability", 1, rhat_line_consistency},
      {"information-loss exact value and vacuous case", 1, info_loss_exact_value},
      {"information loss reaches 7% on the A 5..50 grid", 120, seven_percent_on_grid},
      {"Mahonian balls equal BFS balls", 30, permutohedron_balls},
      {"Kendall distance is the swap-graph metric", 60, metric_properties},
      {"fixed seeds give byte-identical CSV", 60, [cli] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) o.require(false, "took " + fmt_double(secs) + " s, budget " + fmt_double(c.budget_s) + " s");
    if (!o.ok) ++failed;
    std::printf("[%s] %2zu %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, c.name, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
