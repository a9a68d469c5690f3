#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prefbound/bounds.hpp"
#include "prefbound/results.hpp"

namespace prefbound {

/// Inclusive integer range start:stop:step.
struct IntRange {
  int start = 1;
  int stop = 1;
  int step = 1;

  /// Accepts "a", "a:b" or "a:b:s". Throws InvalidArgument on an empty or
  /// malformed range.
  static IntRange parse(std::string_view text);
  [[nodiscard]] std::vector<int> values() const;
  [[nodiscard]] std::string to_string() const;
};

enum class Subcommand { bound_c, rhat, info_loss, verify };

std::string_view to_string(Subcommand cmd);

struct SweepSpec {
  Subcommand subcommand = Subcommand::bound_c;
  IntRange A;
  IntRange I;
  IntRange d;
  std::optional<int> K;
  BallMode ball_mode = BallMode::paper;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 1;
  std::string out = "-";
  int jobs = 1;
  /// verify only: multiplies the pathology bound (negative control).
  double fault_inflation = 1.0;
};

/// Default plotting grid for a subcommand.
SweepSpec default_spec(Subcommand cmd);

std::vector<SweepResult> run_bound_c(const SweepSpec& spec);
std::vector<SweepResult> run_rhat(const SweepSpec& spec);
std::vector<SweepResult> run_info_loss(const SweepSpec& spec);

struct VerifyRun {
  std::vector<SweepResult> rows;
  bool all_passed = true;
};
VerifyRun run_verify(const SweepSpec& spec);

/// Resolved configuration as key=value lines, echoed as CSV comments.
std::vector<std::string> describe_spec(const SweepSpec& spec);

/// Runs the subcommand and renders the complete CSV document.
CsvDocument run_to_document(const SweepSpec& spec, bool* all_passed = nullptr);

}  // namespace prefbound
