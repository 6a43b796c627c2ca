#include "finperf/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace finperf {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::not_applicable: return "not-applicable";
  }
  return "unknown";
}

Check make_check(std::string name, bool ok, std::string details) {
  Check c;
  c.name = std::move(name);
  c.status = ok ? Status::pass : Status::fail;
  c.details = std::move(details);
  return c;
}

Check make_check(std::string name, Status status, std::string details) {
  Check c;
  c.name = std::move(name);
  c.status = status;
  c.details = std::move(details);
  return c;
}

Summary Report::summary() const {
  Summary s;
  for (auto const& c : checks_) {
    if (c.status == Status::pass) ++s.passed;
    else if (c.status == Status::fail) ++s.failed;
    else ++s.skipped;
  }
  return s;
}

nlohmann::json to_json(Check const& c, bool stable) {
  nlohmann::json j;
  j["name"] = c.name;
  j["status"] = std::string(to_string(c.status));
  j["details"] = c.details;
  if (c.witness) j["witness"] = *c.witness;
  if (!c.data.empty()) j["data"] = c.data;
  if (!stable) j["elapsed_ms"] = std::round(c.elapsed_ms * 1000.0) / 1000.0;
  return j;
}

nlohmann::json Report::to_json(bool stable) const {
  nlohmann::json j;
  j["command"] = command_;
  j["params"] = params_;
  j["checks"] = nlohmann::json::array();
  for (auto const& c : checks_) j["checks"].push_back(finperf::to_json(c, stable));
  auto s = summary();
  j["summary"] = {{"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped}};
  return j;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << command_ << ' ' << params_.dump() << '\n';
  for (auto const& c : checks_) {
    out << "  [" << std::setw(14) << std::left << to_string(c.status) << "] " << c.name;
    if (!c.details.empty()) out << ": " << c.details;
    out << '\n';
    if (c.witness) out << "      witness: " << *c.witness << '\n';
  }
  auto s = summary();
  out << "passed " << s.passed << ", failed " << s.failed << ", skipped " << s.skipped << '\n';
  return out.str();
}

}  // namespace finperf
