#pragma once

#include <string>
#include <vector>

#include "io/document.hpp"

namespace kls::io {

enum Status { kOk = 0, kFailed = 1, kInputError = 2 };

struct Report {
  int status = kOk;
  json data;                                   // always carries "v", "command" and "ok"
  std::vector<std::vector<std::string>> rows;  // text rendering
};

/// check | kls | local | verify | ehrhart. Never throws; errors become reports.
Report run_command(const std::string& command, const Document& doc, const json& options);
/// Runs the "expect" block of every *.json document in dir (sorted by name), or its full suite when absent.
Report verify_directory(const std::string& dir, const json& options);
/// Aligned text, or one line of JSON.
std::string render(const Report& r, bool as_json);

}  // namespace kls::io
