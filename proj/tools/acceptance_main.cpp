// One line per acceptance criterion; exit 0 only if all pass.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "finperf/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance battery"};
  finperf::SuiteOptions opts;
  app.add_option("--seed", opts.cert.seed, "RNG seed");
  app.add_option("--samples", opts.cert.samples, "samples per randomized check");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (auto const& cr : finperf::acceptance_criteria()) {
    auto c = finperf::run_criterion(cr.id, opts);
    bool ok = c.passed();
    failed += !ok;
    char timing[96];
    if (cr.bound_ms > 0)
      std::snprintf(timing, sizeof timing, "%.1f ms, bound %.0f ms", c.elapsed_ms, cr.bound_ms);
    else
      std::snprintf(timing, sizeof timing, "%.1f ms", c.elapsed_ms);
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << cr.id << ": " << cr.title << " (" << timing << ") "
              << c.details;
    if (c.witness) std::cout << " | " << *c.witness;
    std::cout << '\n';
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << "(" << failed << " of " << finperf::acceptance_criteria().size()
            << " criteria failed)\n";
  return failed ? 1 : 0;
}
