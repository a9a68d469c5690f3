#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "prefbound/errors.hpp"
#include "prefbound/rng.hpp"
#include "prefbound/sweep.hpp"

using namespace prefbound;

namespace {

SweepSpec spec_for(Subcommand cmd, const char* A, const char* I, const char* d) {
  SweepSpec s = default_spec(cmd);
  s.A = IntRange::parse(A);
  s.I = IntRange::parse(I);
  s.d = IntRange::parse(d);
  return s;
}

}  // namespace

TEST_CASE("range parsing") {
  CHECK(IntRange::parse("5").values() == std::vector<int>{5});
  CHECK(IntRange::parse("2:4").values() == std::vector<int>{2, 3, 4});
  CHECK(IntRange::parse("10:50:20").values() == std::vector<int>{10, 30, 50});
  CHECK(IntRange::parse("1:10:4").values() == std::vector<int>{1, 5, 9});
  CHECK(IntRange::parse("2:4:1").to_string() == "2:4:1");
  for (const char* bad : {"", "a", "5:3", "1:2:0", "1:2:3:4", "1:", "1::2", "3.5"})
    CHECK_THROWS_AS((void)IntRange::parse(bad), InvalidArgument);
}

TEST_CASE("bound-c rows") {
  const auto rows = run_bound_c(spec_for(Subcommand::bound_c, "3", "1:4", "1"));
  REQUIRE(rows.size() == 4);
  CHECK(is_skipped(rows[0]));
  CHECK(*rows[1].value == 0.0);
  CHECK(rows[2].status == "ok");
  CHECK(*rows[2].value == doctest::Approx(1.0 / 36.0));
  CHECK(*rows[3].value == doctest::Approx(1.0 / 12.0));
  CHECK(to_csv({{}, {rows[2]}}).find("bound_c,3,3,1,,,,,0.0277777778,,,ok") != std::string::npos);
}

TEST_CASE("bound-c is non-decreasing in I") {
  const auto rows = run_bound_c(spec_for(Subcommand::bound_c, "3", "3:200", "1"));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(*rows[i].value >= *rows[i - 1].value);
  CHECK(*rows.back().value > 0.99);
}

TEST_CASE("rhat rows") {
  const auto rows = run_rhat(spec_for(Subcommand::rhat, "3:4", "1", "1"));
  REQUIRE(rows.size() == 2);
  CHECK(*rows[0].value == doctest::Approx(2.0 / 3.0));
  CHECK(*rows[0].extra1 == doctest::Approx(1.0 / 3.0));
  CHECK(*rows[0].extra2 == 4.0);
  CHECK(*rows[1].extra2 == 8.0);
}

TEST_CASE("info-loss rows") {
  const auto rows = run_info_loss(spec_for(Subcommand::info_loss, "3", "1", "1:2"));
  REQUIRE(rows.size() == 2);
  CHECK(to_csv({{}, {rows[0]}}).find("info_loss,3,,1,3,paper,,,0.333333333,0.111111111,4,ok") != std::string::npos);
  CHECK(*rows[1].value == 0.0);

  auto s = spec_for(Subcommand::info_loss, "4", "1", "1");
  s.K = 99;
  CHECK(is_skipped(run_info_loss(s)[0]));
}

TEST_CASE("the default information-loss grid reaches seven percent of the maximum") {
  auto s = default_spec(Subcommand::info_loss);
  s.A = IntRange::parse("5:50");
  s.d = IntRange::parse("1:48");
  double best = 0.0;
  for (const auto& r : run_info_loss(s)) {
    if (r.extra1 && *r.d <= *r.A - 2) best = std::max(best, *r.extra1);
    if (r.value) {
      CHECK(*r.extra1 >= 0.0);
      CHECK(*r.extra1 <= 1.0);
    }
  }
  CHECK(best >= 0.07);
}

TEST_CASE("CSV round trip") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    CsvDocument doc;
    doc.comments = {"seed=" + std::to_string(t), "x=\"y\""};
    const auto rows = static_cast<int>(rng.below(6));
    for (int i = 0; i < rows; ++i) {
      SweepResult r;
      r.kind = rng.below(2) ? "verify_bound_c" : "rhat";
      if (rng.below(2)) r.A = static_cast<int>(rng.below(100));
      if (rng.below(2)) r.I = static_cast<int>(rng.below(100));
      if (rng.below(2)) r.d = static_cast<int>(rng.below(10));
      if (rng.below(2)) r.K = static_cast<int>(rng.below(1000));
      if (rng.below(2)) r.ball_mode = "exact";
      if (rng.below(2)) r.trials = rng.below(1'000'000);
      if (rng.below(2)) r.seed = rng.engine()();
      if (rng.below(2)) r.value = std::stod(format_number(static_cast<double>(rng.below(1u << 30)) / 7.0));
      if (rng.below(2)) r.extra1 = std::stod(format_number(1e-300 * static_cast<double>(rng.below(1000))));
      if (rng.below(2)) r.extra2 = std::stod(format_number(-static_cast<double>(rng.below(1000)) / 3.0));
      r.status = rng.below(2) ? "ok" : "fail: a, \"quoted\" reason";
      doc.rows.push_back(r);
    }
    const std::string text = to_csv(doc);
    std::istringstream in(text);
    const CsvDocument back = read_csv(in);
    CHECK(back.rows == doc.rows);
    CHECK(back.comments == doc.comments);
    CHECK(to_csv(back) == text);
  }
  std::istringstream bad("kind,A\nx,1\n");
  CHECK_THROWS_AS((void)read_csv(bad), InvalidArgument);
}

TEST_CASE("documents are deterministic") {
  auto v = spec_for(Subcommand::verify, "3:6", "2:8", "1:2");
  v.trials = 2000;
  v.seed = 17;
  const auto a = to_csv(run_to_document(v));
  v.jobs = 3;
  bool passed = false;
  const auto b = to_csv(run_to_document(v, &passed));
  CHECK(a == b);
  CHECK(passed);
  CHECK(a.rfind("# subcommand=verify", 0) == 0);

  const auto s = spec_for(Subcommand::info_loss, "5:30:5", "1", "1:3");
  CHECK(to_csv(run_to_document(s)) == to_csv(run_to_document(s)));
}
