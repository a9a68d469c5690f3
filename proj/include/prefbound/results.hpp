#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace prefbound {

/// One CSV row. Every subcommand shares the column layout
/// kind,A,I,d,K,ball_mode,trials,seed,value,extra1,extra2,status;
/// columns a row does not use stay empty.
struct SweepResult {
  std::string kind;
  std::optional<int> A;
  std::optional<int> I;
  std::optional<int> d;
  std::optional<int> K;
  std::string ball_mode;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> value;
  std::optional<double> extra1;
  std::optional<double> extra2;
  std::string status;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

struct CsvDocument {
  /// Comment lines without the leading "# ".
  std::vector<std::string> comments;
  std::vector<SweepResult> rows;
};

inline constexpr const char* kCsvHeader = "kind,A,I,d,K,ball_mode,trials,seed,value,extra1,extra2,status";

/// 9 significant digits, trailing zeros dropped.
std::string format_number(double v);

void write_csv(std::ostream& out, const CsvDocument& doc);
std::string to_csv(const CsvDocument& doc);

/// Parses output of write_csv. Throws InvalidArgument on malformed input.
CsvDocument read_csv(std::istream& in);

bool is_skipped(const SweepResult& row);
bool is_failure(const SweepResult& row);

}  // namespace prefbound
