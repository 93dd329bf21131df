#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "relia/text.hpp"

namespace relia {

enum class Verdict { ok, fail };

// One logged attempt at a problem. attempt_index orders attempts within a
// (problem, strategy) pair and must be unique there.
struct RunRecord {
  std::string problem_id;
  std::string strategy;
  std::int64_t attempt_index = 1;
  std::int64_t queries = 1;
  double cost = 0.0;
  Verdict verdict = Verdict::fail;
};

// Interchange schema. Column names and order are fixed; fields must not
// contain commas (no quoting).
inline constexpr std::string_view kRunLogHeader =
    "problem_id,strategy,attempt_index,queries,cost_usd,verdict";

/// Ingest failure carrying one diagnostic per offending row.
class IngestError : public std::runtime_error {
 public:
  explicit IngestError(std::vector<std::string> diagnostics)
      : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  static std::string join(const std::vector<std::string>& diags) {
    std::string out = "run log rejected:";
    for (const auto& d : diags) out += "\n  " + d;
    return out;
  }

  std::vector<std::string> diagnostics_;
};

// Parses and validates a run log. All malformed rows are collected (with
// 1-based data row numbers) before anything is rejected; duplicate
// (problem_id, strategy, attempt_index) triples count as malformed. A
// missing or mismatched header is a hard error on its own.
inline std::vector<RunRecord> ingest(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw IngestError({"missing header row; expected '" + std::string(kRunLogHeader) + "'"});
  if (text::strip(line) != kRunLogHeader)
    throw IngestError({"header mismatch; expected '" + std::string(kRunLogHeader) +
                       "', got '" + text::strip(line) + "'"});

  std::vector<RunRecord> records;
  std::vector<std::string> diagnostics;
  std::set<std::tuple<std::string, std::string, std::int64_t>> seen;

  std::int64_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const std::string stripped = text::strip(line);
    if (stripped.empty()) continue;
    const auto complain = [&](const std::string& why) {
      diagnostics.push_back("row " + std::to_string(row) + ": " + why);
    };

    const auto fields = text::split_csv_line(stripped);
    if (fields.size() != 6) {
      complain("expected 6 fields, got " + std::to_string(fields.size()));
      continue;
    }
    RunRecord rec;
    rec.problem_id = text::strip(fields[0]);
    rec.strategy = text::strip(fields[1]);
    try {
      rec.attempt_index = text::parse_int(text::strip(fields[2]));
      rec.queries = text::parse_int(text::strip(fields[3]));
      rec.cost = text::parse_double(text::strip(fields[4]));
    } catch (const std::invalid_argument& e) {
      complain(e.what());
      continue;
    }
    const std::string verdict = text::strip(fields[5]);
    if (verdict == "OK") {
      rec.verdict = Verdict::ok;
    } else if (verdict == "FAIL") {
      rec.verdict = Verdict::fail;
    } else {
      complain("verdict must be OK or FAIL, got '" + verdict + "'");
      continue;
    }
    if (rec.problem_id.empty()) {
      complain("problem_id is empty");
      continue;
    }
    if (rec.attempt_index < 1) {
      complain("attempt_index must be >= 1");
      continue;
    }
    if (rec.queries < 1) {
      complain("queries must be >= 1");
      continue;
    }
    if (!(rec.cost >= 0.0)) {
      complain("cost_usd must be >= 0");
      continue;
    }
    if (!seen.insert({rec.problem_id, rec.strategy, rec.attempt_index}).second) {
      complain("duplicate attempt_index " + std::to_string(rec.attempt_index) +
               " for (" + rec.problem_id + ", " + rec.strategy + ")");
      continue;
    }
    records.push_back(std::move(rec));
  }

  if (!diagnostics.empty()) throw IngestError(std::move(diagnostics));
  return records;
}

inline void serialize(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kRunLogHeader << '\n';
  for (const auto& r : records) {
    out << r.problem_id << ',' << r.strategy << ',' << r.attempt_index << ','
        << r.queries << ',' << format_double(r.cost) << ','
        << (r.verdict == Verdict::ok ? "OK" : "FAIL") << '\n';
  }
}

inline std::string serialize(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  serialize(out, records);
  return out.str();
}

} // namespace relia
