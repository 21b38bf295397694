// Shared helpers for the test binaries.

#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "sigmacalc/run.hpp"

namespace testing_support {

inline std::string data_path(const std::string& file) { return std::string(SIGMACALC_DATA_DIR) + "/" + file; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// "suite/check" -> status name for every entry of a report.
inline std::map<std::string, std::string> statuses(const sigmacalc::Report& r) {
  std::map<std::string, std::string> out;
  for (const auto& e : r.entries) out[e.suite + "/" + e.check] = sigmacalc::status_name(e.status);
  return out;
}

inline const sigmacalc::CheckEntry* find_entry(const sigmacalc::Report& r, const std::string& key) {
  for (const auto& e : r.entries) {
    if (e.suite + "/" + e.check == key) return &e;
  }
  return nullptr;
}

inline sigmacalc::RunResult run_config(sigmacalc::RunConfig c) { return sigmacalc::run(c); }

}  // namespace testing_support
