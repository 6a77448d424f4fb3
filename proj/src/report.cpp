#include "relfan/report.hpp"

#include <sstream>

namespace relfan {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::interpreted_pass: return "interpreted-pass";
    case Status::precondition: return "precondition";
  }
  return "fail";
}

Status combine(const std::vector<CheckResult>& checks) {
  Status out = Status::pass;
  for (const auto& c : checks) {
    if (c.status == Status::fail) return Status::fail;
    if (c.status == Status::precondition) out = Status::precondition;
    else if (c.status == Status::interpreted_pass && out == Status::pass) out = Status::interpreted_pass;
  }
  return out;
}

int Report::exit_code() const {
  for (const auto& c : checks)
    if (c.status == Status::fail || c.status == Status::precondition) return 1;
  return 0;
}

Json Report::to_json() const {
  Json j;
  j["schema"] = "relfan-report/1";
  j["tool_version"] = tool_version;
  j["spec_hash"] = spec_hash;
  j["fan"] = fan;
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json cj;
    cj["name"] = c.name;
    cj["status"] = to_string(c.status);
    cj["witness"] = c.witness;
    arr.push_back(std::move(cj));
  }
  j["checks"] = std::move(arr);
  if (!data.is_null()) j["data"] = data;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "relfan " << tool_version << "  spec " << spec_hash << "  fan " << fan << "\n";
  for (const auto& c : checks) {
    os << "  [" << to_string(c.status) << "] " << c.name;
    if ((c.status == Status::fail || c.status == Status::precondition) && !c.witness.is_null())
      os << "  witness: " << c.witness.dump();
    os << "\n";
  }
  if (!data.is_null()) {
    const std::string d = data.dump();
    // Large payloads (fan windows) are only useful in the JSON form.
    if (d.size() <= 600)
      os << "  data: " << d << "\n";
    else
      os << "  data: " << d.size() << " bytes, see --format json\n";
  }
  os << (exit_code() == 0 ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace relfan
