#pragma once

// Command-line front end: verify-a5, certify, analyze, suite.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid parameters or
// group spec (including malformed flags), 3 a resource cap was hit.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "finperf/acceptance.hpp"
#include "finperf/constructions.hpp"
#include "finperf/report.hpp"

namespace finperf {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitParams = 2, kExitCap = 3 };

struct RunConfig {
  Params params;
  bool m_given = false;  // otherwise m is the least integer >= 2 coprime to pq
  std::string group;
  CertOptions cert;
  std::optional<std::string> json_path;  // "-" writes JSON to stdout
  bool stable = false;
  std::optional<int> inject_fault;
};

// Least m >= 2 with gcd(m, p q) = 1.
std::uint32_t default_modulus(unsigned p, std::uint32_t q);

Report cmd_verify_a5();
// target: gn | mn | pn | duality. Throws ParameterError on bad params.
Report cmd_certify(std::string const& target, RunConfig const& cfg);
// Throws ParameterError on a bad spec, ResourceError above caps.
Report cmd_analyze(RunConfig const& cfg);
Report cmd_suite(RunConfig const& cfg);

int exit_code_for(Report const& report);

// Full driver; returns the process exit code.
int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace finperf
