// Verification entries and run reports.

#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace sigmacalc {

enum class Status { Pass, Fail, Truncated, NotEvaluated };

const char* status_name(Status s);

struct CheckEntry {
  std::string suite;
  std::string check;
  /// Short tag naming the mathematical statement being checked.
  std::string anchor;
  Status status = Status::Pass;
  /// Serialized counterexample; always present for FAIL.
  std::string witness;
  /// Free-form context (counts, dimensions, notes).
  std::string detail;
  double elapsed_ms = 0.0;
};

using CheckList = std::vector<CheckEntry>;

/// Times a block and builds its entry.
class CheckTimer {
 public:
  CheckTimer() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

CheckEntry make_entry(std::string suite, std::string check, std::string anchor, bool ok,
                      std::string witness = {}, std::string detail = {});

struct ReportHeader {
  std::string tool_version;
  std::map<std::string, std::string> config;
  std::string timestamp;
};

struct Report {
  ReportHeader header;
  CheckList entries;

  std::map<Status, std::size_t> summary() const;
  bool has_failures() const;
};

enum class ReportFormat { Text, Structured };

/// Text: one line per entry "STATUS  suite/check  [anchor]  (ms)" with the
/// witness and detail indented below. Structured: JSON with stable key order;
/// identical reports serialize to identical bytes.
std::string emit_report(const Report& report, ReportFormat format);

}  // namespace sigmacalc
