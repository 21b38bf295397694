#include "sigmacalc/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace sigmacalc {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Truncated: return "TRUNCATED";
    case Status::NotEvaluated: return "NOT-EVALUATED";
  }
  return "?";
}

CheckEntry make_entry(std::string suite, std::string check, std::string anchor, bool ok,
                      std::string witness, std::string detail) {
  CheckEntry e;
  e.suite = std::move(suite);
  e.check = std::move(check);
  e.anchor = std::move(anchor);
  e.status = ok ? Status::Pass : Status::Fail;
  e.witness = ok ? std::string() : std::move(witness);
  if (!ok && e.witness.empty()) e.witness = "(no witness recorded)";
  e.detail = std::move(detail);
  return e;
}

std::map<Status, std::size_t> Report::summary() const {
  std::map<Status, std::size_t> counts{
      {Status::Pass, 0}, {Status::Fail, 0}, {Status::Truncated, 0}, {Status::NotEvaluated, 0}};
  for (const auto& e : entries) ++counts[e.status];
  return counts;
}

bool Report::has_failures() const {
  for (const auto& e : entries) {
    if (e.status == Status::Fail) return true;
  }
  return false;
}

namespace {

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f ms", ms);
  return buf;
}

std::string text_report(const Report& r) {
  std::ostringstream out;
  out << "sigmacalc " << r.header.tool_version << '\n';
  for (const auto& [k, v] : r.header.config) out << "  " << k << " = " << v << '\n';
  if (!r.header.timestamp.empty()) out << "  timestamp = " << r.header.timestamp << '\n';
  out << '\n';
  for (const auto& e : r.entries) {
    std::string status = status_name(e.status);
    status.resize(14, ' ');
    out << status << e.suite << '/' << e.check << "  [" << e.anchor << ']';
    if (e.elapsed_ms > 0) out << "  (" << format_ms(e.elapsed_ms) << ')';
    out << '\n';
    if (!e.witness.empty()) out << "    witness: " << e.witness << '\n';
    if (!e.detail.empty()) out << "    " << e.detail << '\n';
  }
  const auto s = r.summary();
  out << '\n'
      << "summary: " << s.at(Status::Pass) << " PASS, " << s.at(Status::Fail) << " FAIL, "
      << s.at(Status::Truncated) << " TRUNCATED, " << s.at(Status::NotEvaluated)
      << " NOT-EVALUATED\n";
  return out.str();
}

std::string structured_report(const Report& r) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["tool_version"] = r.header.tool_version;
  doc["timestamp"] = r.header.timestamp;
  ordered_json config = ordered_json::object();
  for (const auto& [k, v] : r.header.config) config[k] = v;
  doc["config"] = config;
  ordered_json entries = ordered_json::array();
  for (const auto& e : r.entries) {
    ordered_json j;
    j["suite"] = e.suite;
    j["check"] = e.check;
    j["anchor"] = e.anchor;
    j["status"] = status_name(e.status);
    j["witness"] = e.witness;
    j["detail"] = e.detail;
    j["elapsed_ms"] = e.elapsed_ms;
    entries.push_back(std::move(j));
  }
  doc["entries"] = entries;
  ordered_json summary = ordered_json::object();
  for (const auto& [s, n] : r.summary()) summary[status_name(s)] = n;
  doc["summary"] = summary;
  return doc.dump(2) + "\n";
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::Text ? text_report(report) : structured_report(report);
}

}  // namespace sigmacalc
