#include "prefbound/sweep.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "prefbound/errors.hpp"
#include "prefbound/oracles.hpp"
#include "prefbound/parallel.hpp"

namespace prefbound {

namespace {

int parse_int(std::string_view text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("malformed integer '" + std::string(text) + "' in range");
  }
  return v;
}

// Evaluates fn over the A x d grid in deterministic order.
template <typename Fn>
std::vector<SweepResult> over_a_d(const SweepSpec& spec, Fn&& fn) {
  std::vector<std::pair<int, int>> points;
  for (int a : spec.A.values()) {
    for (int d : spec.d.values()) points.emplace_back(a, d);
  }
  std::vector<SweepResult> rows(points.size());
  parallel_for(points.size(), spec.jobs, [&](std::size_t i) { rows[i] = fn(points[i].first, points[i].second); });
  return rows;
}

}  // namespace

IntRange IntRange::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const auto colon = text.find(':', begin);
    parts.push_back(text.substr(begin, colon == std::string_view::npos ? std::string_view::npos : colon - begin));
    if (colon == std::string_view::npos) break;
    begin = colon + 1;
  }
  if (parts.size() > 3) throw InvalidArgument("range '" + std::string(text) + "' must be start[:stop[:step]]");
  IntRange r;
  r.start = parse_int(parts[0]);
  r.stop = parts.size() > 1 ? parse_int(parts[1]) : r.start;
  r.step = parts.size() > 2 ? parse_int(parts[2]) : 1;
  if (r.step < 1) throw InvalidArgument("range '" + std::string(text) + "' needs a positive step");
  if (r.stop < r.start) throw InvalidArgument("range '" + std::string(text) + "' is empty");
  return r;
}

std::vector<int> IntRange::values() const {
  std::vector<int> out;
  for (int v = start; v <= stop; v += step) out.push_back(v);
  return out;
}

std::string IntRange::to_string() const { return fmt::format("{}:{}:{}", start, stop, step); }

std::string_view to_string(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::bound_c: return "bound-c";
    case Subcommand::rhat: return "rhat";
    case Subcommand::info_loss: return "info-loss";
    case Subcommand::verify: return "verify";
  }
  return "unknown";
}

SweepSpec default_spec(Subcommand cmd) {
  SweepSpec s;
  s.subcommand = cmd;
  switch (cmd) {
    case Subcommand::bound_c:
      s.A = {10, 50, 10};
      s.I = {2, 100, 1};
      s.d = {1, 5, 1};
      break;
    case Subcommand::rhat:
      s.A = {5, 50, 5};
      s.I = {1, 1, 1};
      s.d = {1, 49, 1};
      break;
    case Subcommand::info_loss:
      s.A = {5, 50, 5};
      s.I = {1, 1, 1};
      s.d = {1, 48, 1};
      break;
    case Subcommand::verify:
      s.A = {3, 6, 1};
      s.I = {2, 12, 1};
      s.d = {1, 2, 1};
      break;
  }
  return s;
}

std::vector<SweepResult> run_bound_c(const SweepSpec& spec) {
  std::vector<BoundParams> points;
  for (int a : spec.A.values()) {
    for (int i : spec.I.values()) {
      for (int d : spec.d.values()) points.push_back({.A = a, .I = i, .d = d});
    }
  }
  std::vector<SweepResult> rows(points.size());
  parallel_for(points.size(), spec.jobs, [&](std::size_t n) {
    const auto& p = points[n];
    SweepResult r{.kind = "bound_c", .A = p.A, .I = p.I, .d = p.d};
    if (p.A < 1 || p.I < 1 || p.d < 1 || !(p.d < std::min(p.I, p.A - 1))) {
      r.status = "skipped: requires d < min(I, A-1)";
    } else {
      r.value = pathology_probability_lower_bound(p);
      r.status = "ok";
    }
    rows[n] = std::move(r);
  });
  return rows;
}

std::vector<SweepResult> run_rhat(const SweepSpec& spec) {
  return over_a_d(spec, [](int a, int d) {
    SweepResult r{.kind = "rhat", .A = a, .d = d};
    if (a < 1 || d < 1) {
      r.status = "skipped: requires A >= 1 and d >= 1";
      return r;
    }
    const auto rb = max_representable_upper_bound(a, d);
    r.value = rb.fraction;
    r.extra1 = rb.p_banned;
    r.extra2 = rb.rhat;
    r.status = "ok";
    return r;
  });
}

std::vector<SweepResult> run_info_loss(const SweepSpec& spec) {
  return over_a_d(spec, [&](int a, int d) {
    SweepResult r{.kind = "info_loss", .A = a, .d = d, .ball_mode = std::string(to_string(spec.ball_mode))};
    BoundParams p{.A = a, .d = d, .K = spec.K, .ball_mode = spec.ball_mode};
    if (a < 2 || d < 1) {
      r.status = "skipped: requires A >= 2 and d >= 1";
      return r;
    }
    r.K = p.truncation();
    if (p.truncation() > p.max_distance() || p.truncation() < 0) {
      r.status = "skipped: requires K <= A(A-1)/2";
      return r;
    }
    const auto bound = info_loss_lower_bound(p);
    r.value = bound.expectation_lb;
    r.extra1 = bound.scaled_lb;
    r.extra2 = bound.rhat_used;
    r.status = "ok";
    return r;
  });
}

VerifyRun run_verify(const SweepSpec& spec) {
  std::vector<BoundParams> grid;
  for (int a : spec.A.values()) {
    for (int i : spec.I.values()) {
      for (int d : spec.d.values()) grid.push_back({.A = a, .I = i, .d = d});
    }
  }
  VerifyBudget budget;
  budget.trials = spec.trials;
  budget.seed = spec.seed;
  budget.jobs = spec.jobs;
  budget.bound_inflation = spec.fault_inflation;
  VerifyRun run;
  run.rows = verify_all(grid, budget);
  for (const auto& r : run.rows) {
    if (is_failure(r)) run.all_passed = false;
  }
  return run;
}

std::vector<std::string> describe_spec(const SweepSpec& spec) {
  std::vector<std::string> out{
      fmt::format("subcommand={}", to_string(spec.subcommand)),
      fmt::format("A={}", spec.A.to_string()),
      fmt::format("I={}", spec.I.to_string()),
      fmt::format("d={}", spec.d.to_string()),
      fmt::format("K={}", spec.K ? std::to_string(*spec.K) : "default"),
      fmt::format("ball-mode={}", to_string(spec.ball_mode)),
      fmt::format("trials={}", spec.trials),
      fmt::format("seed={}", spec.seed),
  };
  if (spec.fault_inflation != 1.0) out.push_back(fmt::format("fault-inflate={}", format_number(spec.fault_inflation)));
  return out;
}

CsvDocument run_to_document(const SweepSpec& spec, bool* all_passed) {
  CsvDocument doc;
  doc.comments = describe_spec(spec);
  bool ok = true;
  switch (spec.subcommand) {
    case Subcommand::bound_c: doc.rows = run_bound_c(spec); break;
    case Subcommand::rhat: doc.rows = run_rhat(spec); break;
    case Subcommand::info_loss: doc.rows = run_info_loss(spec); break;
    case Subcommand::verify: {
      auto run = run_verify(spec);
      doc.rows = std::move(run.rows);
      ok = run.all_passed;
      break;
    }
  }
  if (all_passed != nullptr) *all_passed = ok;
  return doc;
}

}  // namespace prefbound
