#include "prefbound/results.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "prefbound/errors.hpp"

namespace prefbound {

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw InvalidArgument("unterminated quoted CSV field");
  return fields;
}

template <typename T>
std::optional<T> parse_optional(const std::string& field) {
  if (field.empty()) return std::nullopt;
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InvalidArgument("malformed CSV number '" + field + "'");
  }
  return value;
}

std::optional<double> parse_double(const std::string& field) {
  if (field.empty()) return std::nullopt;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("malformed CSV number '" + field + "'");
  }
  if (used != field.size()) throw InvalidArgument("malformed CSV number '" + field + "'");
  return v;
}

template <typename T>
std::string show(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

std::string show(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string format_number(double v) { return fmt::format("{:.9g}", v); }

void write_csv(std::ostream& out, const CsvDocument& doc) {
  for (const auto& c : doc.comments) out << "# " << c << '\n';
  out << kCsvHeader << '\n';
  for (const auto& r : doc.rows) {
    out << quote(r.kind) << ',' << show(r.A) << ',' << show(r.I) << ',' << show(r.d) << ',' << show(r.K) << ','
        << quote(r.ball_mode) << ',' << show(r.trials) << ',' << show(r.seed) << ',' << show(r.value) << ','
        << show(r.extra1) << ',' << show(r.extra2) << ',' << quote(r.status) << '\n';
  }
}

std::string to_csv(const CsvDocument& doc) {
  std::ostringstream os;
  write_csv(os, doc);
  return os.str();
}

CsvDocument read_csv(std::istream& in) {
  CsvDocument doc;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!header_seen && line.rfind('#', 0) == 0) {
      doc.comments.push_back(line.rfind("# ", 0) == 0 ? line.substr(2) : line.substr(1));
      continue;
    }
    if (!header_seen) {
      if (line != kCsvHeader) throw InvalidArgument("unexpected CSV header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto f = split_fields(line);
    if (f.size() != 12) throw InvalidArgument("CSV row has " + std::to_string(f.size()) + " fields, expected 12");
    SweepResult r;
    r.kind = f[0];
    r.A = parse_optional<int>(f[1]);
    r.I = parse_optional<int>(f[2]);
    r.d = parse_optional<int>(f[3]);
    r.K = parse_optional<int>(f[4]);
    r.ball_mode = f[5];
    r.trials = parse_optional<std::uint64_t>(f[6]);
    r.seed = parse_optional<std::uint64_t>(f[7]);
    r.value = parse_double(f[8]);
    r.extra1 = parse_double(f[9]);
    r.extra2 = parse_double(f[10]);
    r.status = f[11];
    doc.rows.push_back(std::move(r));
  }
  if (!header_seen) throw InvalidArgument("CSV input has no header");
  return doc;
}

bool is_skipped(const SweepResult& row) { return row.status.rfind("skipped", 0) == 0; }

bool is_failure(const SweepResult& row) { return row.status.rfind("fail", 0) == 0; }

}  // namespace prefbound
