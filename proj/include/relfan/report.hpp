#pragma once

// Check results and the report written by the command line tool.

#include <json.hpp>

#include <string>
#include <vector>

namespace relfan {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, interpreted_pass, precondition };

std::string to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::pass;
  Json witness;
};

/// Status of a conjunction: any fail wins, then precondition, then
/// interpreted-pass.
Status combine(const std::vector<CheckResult>& checks);

struct Report {
  std::string tool_version;
  std::string spec_hash;
  std::string fan;
  std::vector<CheckResult> checks;
  Json data;  // command specific payload (windows, filtrations)

  /// 0 when every check passes (interpreted-pass counts), 1 otherwise.
  int exit_code() const;
  Json to_json() const;
  std::string to_text() const;
};

}  // namespace relfan
