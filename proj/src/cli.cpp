#include "finperf/cli.hpp"

#include <fstream>
#include <numeric>
#include <ostream>

#include "CLI11.hpp"
#include "finperf/catalog.hpp"
#include "finperf/duality.hpp"
#include "finperf/error.hpp"
#include "finperf/group.hpp"
#include "finperf/perms.hpp"

namespace finperf {

namespace {

nlohmann::json params_json(RunConfig const& cfg) {
  auto const& p = cfg.params;
  return {{"p", p.p},
          {"q", p.q},
          {"m", p.m},
          {"n", p.n},
          {"seed", cfg.cert.seed},
          {"samples", cfg.cert.samples},
          {"cap_enum", cfg.cert.cap_enum},
          {"cap_width", cfg.cert.cap_width},
          {"cap_solve", cfg.cert.cap_solve}};
}

std::vector<Check> duality_checks(Params const& params, CertOptions const& opts) {
  std::vector<Check> out;
  auto const d = standard_defining_vector(params);
  std::optional<InvariantFunctional> inv;
  out.push_back(timed([&] {
    try {
      inv = invariant_functional(params, {d});
    } catch (NoSuchVector const& e) {
      return make_check("duality.invariant_functional " + params.to_string(), Status::not_applicable,
                        std::string("hypothesis not met: ") + e.what());
    }
    auto c = make_check("duality.invariant_functional " + params.to_string(), true,
                        "phi = p^-1 sum of phi_v over an orbit of size " + std::to_string(inv->orbit.size()) +
                            "; phi(z_n) = 1, supp(phi) inside W");
    c.data = {{"pre_rescale", inv->pre_rescale},
              {"support_size", inv->orbit.size()},
              {"defining", d.to_string()},
              {"functional", to_json(inv->phi)}};
    return c;
  }));
  if (inv) {
    auto ci = check_invariance(inv->phi, params, {d});
    out.insert(out.end(), ci.begin(), ci.end());
    std::vector<GnElement> ap;
    for (auto const& s : alternating_generators(params.p)) ap.push_back({block_zero(params.p, params.q, params.n), s});
    out.push_back(extension_homomorphism_check(extend_invariant_functional(inv->phi, ap), opts));
  }
  auto ng = no_global_invariant_functional(params, opts);
  out.insert(out.end(), ng.begin(), ng.end());
  return out;
}

void write_report(Report const& report, RunConfig const& cfg, std::ostream& out) {
  auto const j = report.to_json(cfg.stable);
  if (cfg.json_path && *cfg.json_path == "-") {
    out << j.dump(2) << '\n';
    return;
  }
  out << report.to_text();
  if (cfg.json_path) {
    std::ofstream f(*cfg.json_path, std::ios::binary);
    if (!f) throw ParameterError("cannot open " + *cfg.json_path + " for writing");
    f << j.dump(2) << '\n';
  }
}

}  // namespace

std::uint32_t default_modulus(unsigned p, std::uint32_t q) {
  std::uint64_t const pq = std::uint64_t{p} * q;
  for (std::uint32_t m = 2;; ++m)
    if (std::gcd<std::uint64_t, std::uint64_t>(m, pq) == 1) return m;
}

Report cmd_verify_a5() {
  Report report("verify-a5");
  report.add(timed([] {
    auto r = verify_a5_fixed_point_lemma();
    auto c = make_check("a5.fixed_point_lemma", r.solutions > 0,
                        std::to_string(r.solutions) + " of " + std::to_string(r.pairs_examined) +
                            " pairs satisfy [s1, s2] = (12)(34); every one fixes 5");
    c.data = {{"pairs", r.pairs_examined}, {"solutions", r.solutions}};
    return c;
  }));
  return report;
}

Report cmd_certify(std::string const& target, RunConfig const& cfg) {
  cfg.params.validate();
  Report report("certify " + target, params_json(cfg));
  auto const& params = cfg.params;
  auto const& opts = cfg.cert;
  if (target == "gn") {
    report.add(timed_all([&] { return certify_Gn_perfect_width2(params, opts); }));
    report.add(timed([&] { return gn_tightness_check(params, opts); }));
    auto lb = width_lower_bound(params);
    auto c = make_check("gn.width_lower_bound " + params.to_string(), Status::not_applicable,
                        "reported only: n (p - 1) / p! = " + lb.to_string());
    c.data = {{"num", lb.num}, {"den", lb.den}};
    report.add(std::move(c));
  } else if (target == "mn") {
    report.add(timed_all([&] { return b_module_checks(params.q, params.m, opts.cap_enum); }));
    report.add(timed_all([&] { return certify_Mn_perfect(params, opts); }));
    report.add(timed_all([&] { return action_checks(params, opts); }));
    report.add(timed_all([&] { return avm_identities_check(params, opts); }));
  } else if (target == "pn") {
    report.add(timed_all([&] { return certify_Pn_perfect(params, opts); }));
    report.add(timed([&] { return gn_tightness_check(params, opts); }));
    report.add(timed([&] { return mg_diameter_check(params, opts); }));
  } else if (target == "duality") {
    report.add(duality_checks(params, opts));
  } else {
    throw ParameterError("unknown certify target '" + target + "' (gn, mn, pn, duality)");
  }
  return report;
}

Report cmd_analyze(RunConfig const& cfg) {
  Report report("analyze", {{"group", cfg.group}, {"cap_enum", cfg.cert.cap_enum}, {"cap_width", cfg.cert.cap_width}});
  if (cfg.group.empty()) throw ParameterError("analyze needs --group");
  auto const g = parse_group_spec(cfg.group, GroupOptions{cfg.cert.cap_enum, GroupOptions{}.table_limit});
  {
    auto c = make_check("analyze.enumeration", true, "order " + std::to_string(g.group.order()));
    c.data = {{"order", g.group.order()}};
    report.add(std::move(c));
  }
  AnalysisOptions aopts{cfg.cert.cap_enum, cfg.cert.cap_width};
  auto a = timed([&] {
    auto r = analyze_group(g.group, aopts);
    Check c = make_check("analyze.structure", true,
                         std::string("perfect=") + (r.perfect ? "true" : "false") +
                             " simple=" + (r.simple ? "true" : "false") +
                             " semisimple=" + (r.semisimple ? "true" : "false") +
                             " quasisimple=" + (r.quasisimple ? "true" : "false") +
                             " almost_simple=" + (r.almost_simple ? "true" : "false") +
                             " |Z|=" + std::to_string(r.center_order) +
                             " |CR|=" + std::to_string(r.cr_radical_order) +
                             " |Rad|=" + std::to_string(r.solvable_radical_order));
    c.data = {{"order", r.order},
              {"abelian", r.abelian},
              {"perfect", r.perfect},
              {"solvable", r.solvable},
              {"simple", r.simple},
              {"semisimple", r.semisimple},
              {"quasisimple", r.quasisimple},
              {"almost_simple", r.almost_simple},
              {"central_product_of_quasisimples", r.central_product_of_quasisimples},
              {"central_ext_of_semisimple", r.central_ext_of_semisimple},
              {"center_order", r.center_order},
              {"derived_order", r.derived_order},
              {"cr_radical_order", r.cr_radical_order},
              {"solvable_radical_order", r.solvable_radical_order},
              {"normal_subgroups", r.normal_subgroup_count},
              {"abelianization", r.abelianization}};
    if (r.commutator_width) c.data["commutator_width"] = *r.commutator_width;
    c.data["width_skipped"] = r.width_skipped;
    return c;
  });
  bool const perfect = a.data["perfect"];
  bool const skipped = a.data["width_skipped"];
  report.add(a);
  if (!perfect) {
    report.add(make_check("analyze.commutator_width", Status::not_applicable, "not perfect; width undefined"));
  } else if (skipped) {
    report.add(make_check("analyze.commutator_width", Status::skipped, "group above the width cap"));
  } else {
    auto c = make_check("analyze.commutator_width", true, "width " + a.data["commutator_width"].dump());
    c.data = {{"width", a.data["commutator_width"]}};
    report.add(std::move(c));
  }
  return report;
}

Report cmd_suite(RunConfig const& cfg) {
  SuiteOptions opts;
  opts.cert = cfg.cert;
  opts.inject_fault = cfg.inject_fault;
  return run_suite(opts);
}

int exit_code_for(Report const& report) { return report.ok() ? kExitPass : kExitFail; }

int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certificates for finite perfect groups and their constructions"};
  app.name("finperf");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string target;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.cert.seed, "RNG seed for sampled checks");
    sub->add_option("--samples", cfg.cert.samples, "samples per randomized check")->check(CLI::Range(1, 10000000));
    sub->add_option("--cap-enum", cfg.cert.cap_enum, "cap on enumerated elements")->check(CLI::PositiveNumber);
    sub->add_option("--cap-width", cfg.cert.cap_width, "cap on group order for width BFS")->check(CLI::PositiveNumber);
    sub->add_option("--cap-solve", cfg.cert.cap_solve, "cap on Z/m linear-solve unknowns")->check(CLI::PositiveNumber);
    sub->add_option("--json", cfg.json_path, "write the JSON report to PATH ('-' for stdout)");
    sub->add_flag("--stable", cfg.stable, "omit timings so reports are byte-stable");
  };
  CLI::Option* m_opt = nullptr;
  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.params.p, "prime p >= 5");
    sub->add_option("--q", cfg.params.q, "prime q != p");
    m_opt = sub->add_option("--m", cfg.params.m, "modulus coprime to pq");
    sub->add_option("--n", cfg.params.n, "block length n >= 1");
  };

  auto* verify = app.add_subcommand("verify-a5", "exhaustive fixed-point lemma in A5");
  add_common(verify);
  auto* certify = app.add_subcommand("certify", "run a certificate suite");
  certify->add_option("target", target, "gn | mn | pn | duality")
      ->required()
      ->check(CLI::IsMember({"gn", "mn", "pn", "duality"}));
  add_common(certify);
  add_params(certify);
  auto* analyze = app.add_subcommand("analyze", "structure of a catalog group");
  analyze->add_option("--group", cfg.group, "group spec")->required();
  add_common(analyze);
  auto* suite = app.add_subcommand("suite", "full acceptance battery");
  add_common(suite);
  suite->add_option("--inject-fault", cfg.inject_fault, "force a failure in criterion N")->check(CLI::Range(1, 11));

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return kExitPass;
  } catch (CLI::ParseError const& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << '\n';
    return kExitParams;
  }
  cfg.m_given = m_opt && m_opt->count() > 0;
  if (!cfg.m_given && cfg.params.p >= 2 && cfg.params.q >= 2) cfg.params.m = default_modulus(cfg.params.p, cfg.params.q);

  std::optional<Report> report;
  try {
    if (*verify) report = cmd_verify_a5();
    else if (*certify) report = cmd_certify(target, cfg);
    else if (*analyze) report = cmd_analyze(cfg);
    else report = cmd_suite(cfg);
  } catch (ParameterError const& e) {
    err << "error: " << e.what() << '\n';
    return kExitParams;
  } catch (NoSuchVector const& e) {
    err << "error: " << e.what() << '\n';
    return kExitParams;
  } catch (ResourceError const& e) {
    err << "resource cap: " << e.what() << '\n';
    Report partial(*analyze ? "analyze" : "certify " + target, {{"group", cfg.group}});
    auto c = make_check("resource_cap", Status::skipped, e.what());
    c.data = {{"partial", e.partial()}};
    partial.add(std::move(c));
    write_report(partial, cfg, out);
    return kExitCap;
  } catch (VerificationFailure const& e) {
    err << "verification failure: " << e.what() << " (" << e.witness() << ")\n";
    return kExitFail;
  }
  try {
    write_report(*report, cfg, out);
  } catch (ParameterError const& e) {
    err << "error: " << e.what() << '\n';
    return kExitParams;
  }
  return exit_code_for(*report);
}

}  // namespace finperf
