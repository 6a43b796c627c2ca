#pragma once

// Check records shared by certificates, suites and the CLI.

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace finperf {

enum class Status { pass, fail, skipped, not_applicable };

std::string_view to_string(Status s) noexcept;

struct Check {
  std::string name;
  Status status = Status::pass;
  std::string details;
  std::optional<std::string> witness;
  nlohmann::json data = nlohmann::json::object();
  double elapsed_ms = 0;

  bool passed() const noexcept { return status == Status::pass; }
  bool failed() const noexcept { return status == Status::fail; }
};

Check make_check(std::string name, bool ok, std::string details = {});
Check make_check(std::string name, Status status, std::string details);

// Runs fn (returning a Check) and records its wall time.
template <class F>
Check timed(F&& fn) {
  auto const start = std::chrono::steady_clock::now();
  Check c = fn();
  c.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return c;
}

// Same for a function returning several checks; the time is split evenly.
template <class F>
std::vector<Check> timed_all(F&& fn) {
  auto const start = std::chrono::steady_clock::now();
  std::vector<Check> cs = fn();
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  for (auto& c : cs) c.elapsed_ms = cs.empty() ? 0 : ms / static_cast<double>(cs.size());
  return cs;
}

struct Summary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;  // includes not-applicable
};

class Report {
 public:
  explicit Report(std::string command, nlohmann::json params = nlohmann::json::object())
      : command_(std::move(command)), params_(std::move(params)) {}

  void add(Check c) { checks_.push_back(std::move(c)); }
  void add(std::vector<Check> cs) {
    for (auto& c : cs) checks_.push_back(std::move(c));
  }

  std::string const& command() const noexcept { return command_; }
  nlohmann::json const& params() const noexcept { return params_; }
  std::vector<Check> const& checks() const noexcept { return checks_; }
  Summary summary() const;
  bool ok() const { return summary().failed == 0; }

  // stable drops timings so identical runs serialize identically.
  nlohmann::json to_json(bool stable) const;
  std::string to_text() const;

 private:
  std::string command_;
  nlohmann::json params_;
  std::vector<Check> checks_;
};

nlohmann::json to_json(Check const& c, bool stable);

}  // namespace finperf
