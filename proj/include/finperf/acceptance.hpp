#pragma once

// The acceptance battery: one aggregated check per numbered criterion, each
// holding its sub-checks and, where pinned, a wall-clock bound.

#include <optional>
#include <string>
#include <vector>

#include "finperf/constructions.hpp"
#include "finperf/report.hpp"

namespace finperf {

struct Criterion {
  int id = 0;
  std::string title;
  double bound_ms = 0;  // 0: no runtime bound
};

std::vector<Criterion> const& acceptance_criteria();

struct SuiteOptions {
  CertOptions cert;
  // Appends a failing sub-check to this criterion; exercises the failure path.
  std::optional<int> inject_fault;
};

// Named "criterion.<id> <title>". Passes when every sub-check passes (or is
// not-applicable) and the bound holds; skipped sub-checks count as failures.
Check run_criterion(int id, SuiteOptions const& opts = {});

// Criteria 1..10 and, when with_determinism is set, criterion 11, which
// reruns 1..10 and compares the stable JSON byte for byte.
Report run_suite(SuiteOptions const& opts = {}, bool with_determinism = true);

}  // namespace finperf
