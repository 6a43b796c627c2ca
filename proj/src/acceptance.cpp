#include "finperf/acceptance.hpp"

#include <algorithm>

#include "finperf/catalog.hpp"
#include "finperf/duality.hpp"
#include "finperf/error.hpp"
#include "finperf/group.hpp"
#include "finperf/perms.hpp"

namespace finperf {

namespace {

// The two smallest parameter sets meeting every coprimality constraint.
Params const kPrimary{5, 2, 3, 1};
Params const kCross{5, 3, 2, 1};

using Checks = std::vector<Check>;

void append(Checks& out, Checks more) {
  for (auto& c : more) out.push_back(std::move(c));
}

Check const* find(Checks const& cs, std::string const& prefix) {
  for (auto const& c : cs)
    if (c.name.starts_with(prefix)) return &c;
  return nullptr;
}

// Exceptions become failing sub-checks so one criterion cannot take down the battery.
template <class F>
Checks guarded(std::string const& name, F&& fn) {
  try {
    return fn();
  } catch (std::exception const& e) {
    auto c = make_check(name, false, std::string("exception: ") + e.what());
    if (auto const* vf = dynamic_cast<VerificationFailure const*>(&e)) c.witness = vf->witness();
    return {c};
  }
}

Checks criterion_a5() {
  auto r = verify_a5_fixed_point_lemma();
  bool every_fixes = std::all_of(r.solution_pairs.begin(), r.solution_pairs.end(),
                                 [](auto const& pr) { return pr.first(5) == 5 && pr.second(5) == 5; });
  auto c = make_check("a5.fixed_point_lemma", r.pairs_examined == 3600 && r.solutions > 0 && every_fixes,
                      std::to_string(r.pairs_examined) + " pairs examined, " + std::to_string(r.solutions) +
                          " solutions of [s1, s2] = (12)(34), all fixing 5");
  c.data = {{"pairs", r.pairs_examined}, {"solutions", r.solutions}};
  return {c};
}

Checks criterion_gn(CertOptions const& opts) {
  Checks out;
  for (auto const& params : {kPrimary, kCross}) {
    auto cs = certify_Gn_perfect_width2(params, opts);
    auto const* w = find(cs, "gn.exact_width");
    bool two = w && w->data.contains("width") && w->data["width"] == 2;
    auto c = make_check("gn.exact_width_equals_2 " + params.to_string(), two,
                        "BFS width of G_1 over F_" + std::to_string(params.q) + " is exactly 2");
    if (w && w->data.contains("order")) c.data = {{"order", w->data["order"]}};
    append(out, std::move(cs));
    out.push_back(std::move(c));
    out.push_back(gn_tightness_check(params, opts));
  }
  out.push_back(make_check("gn.order_960", gn_order(kPrimary) == 960, "|G_1| = 2^4 * 60 at q = 2"));
  return out;
}

Checks criterion_b() {
  Checks out;
  for (auto [q, m] : {std::pair{2u, 3u}, {3u, 2u}, {3u, 4u}, {5u, 6u}}) append(out, b_module_checks(q, m));
  return out;
}

Checks criterion_mn(CertOptions const& opts) {
  Checks out;
  append(out, certify_Pn_perfect(kPrimary, opts));
  append(out, certify_Pn_perfect(kCross, opts));
  return out;
}

Checks criterion_actions(CertOptions const& opts) {
  Checks out;
  append(out, action_checks(kPrimary, opts));
  append(out, action_checks(kCross, opts));
  return out;
}

Checks criterion_avm(CertOptions const& opts) {
  Checks out;
  append(out, avm_identities_check(kPrimary, opts));
  append(out, avm_identities_check(kCross, opts));
  return out;
}

Checks criterion_diameter(CertOptions const& opts) {
  auto c = mg_diameter_check(kPrimary, opts);
  bool ok = c.passed() && c.data.value("width", -1) == 2 && c.data.value("diameter", 99) <= 4;
  auto d = make_check("mg.width_2_diameter_at_most_4", ok,
                      "V_1 x| A_5: width " + c.data.value("width", nlohmann::json(-1)).dump() + ", diameter " +
                          c.data.value("diameter", nlohmann::json(-1)).dump());
  return {c, d};
}

Checks criterion_duality(CertOptions const& opts) {
  Params const params{5, 2, 3, 2};
  auto const d = standard_defining_vector(params);
  auto inv = invariant_functional(params, {d});
  Checks out;
  {
    auto c = make_check("duality.phi_z_n", inv.phi(z_n(params)) == 1 && inv.pre_rescale == 5,
                        "phi(z_n) = 1 after dividing the pre-rescale value " + std::to_string(inv.pre_rescale) +
                            " by p");
    c.data = {{"pre_rescale", inv.pre_rescale}, {"functional", to_json(inv.phi)}};
    out.push_back(std::move(c));
  }
  out.push_back(make_check("duality.support_size_5", inv.phi.support().size() == 5,
                           "supp(phi) = A_5-orbit of size " + std::to_string(inv.phi.support().size())));
  append(out, check_invariance(inv.phi, params, {d}));
  std::vector<GnElement> ap;
  for (auto const& s : alternating_generators(params.p)) ap.push_back({block_zero(params.p, params.q, params.n), s});
  out.push_back(extension_homomorphism_check(extend_invariant_functional(inv.phi, ap), opts));
  return out;
}

Checks criterion_obstruction(CertOptions const& opts) { return no_global_invariant_functional(kPrimary, opts); }

Checks criterion_classification() {
  Checks out;
  auto add = [&](std::string name, bool ok, std::string details) {
    out.push_back(make_check(std::move(name), ok, std::move(details)));
  };
  {
    auto a = analyze_group(catalog_a5().group);
    add("class.a5", a.simple && a.semisimple && a.quasisimple && a.almost_simple && a.commutator_width == 1,
        "A5 simple, semisimple, quasisimple, almost simple, width 1");
  }
  {
    auto a = analyze_group(catalog_s5().group);
    add("class.s5", a.almost_simple && !a.perfect, "S5 almost simple and not perfect");
  }
  {
    auto g = catalog_sl25().group;
    auto a = analyze_group(g);
    auto quot = quotient_group(g, center(g));
    add("class.sl25", a.quasisimple && a.center_order == 2 && is_simple(quot.group) && quot.group.order() == 60,
        "SL2(5) quasisimple, |Z| = 2, SL2(5)/Z simple of order 60");
  }
  {
    auto a = analyze_group(catalog_a5xa5().group);
    add("class.a5xa5", a.semisimple && a.normal_subgroup_count == 4,
        "A5 x A5 semisimple with " + std::to_string(a.normal_subgroup_count) + " normal subgroups");
  }
  {
    auto a = analyze_group(catalog_subdirect_sl25().group);
    auto c = make_check("class.subdirect_sl25",
                        a.order == 240 && !a.perfect && a.abelianization == std::vector<std::uint64_t>{2} &&
                            !a.central_product_of_quasisimples,
                        "order " + std::to_string(a.order) +
                            " (SL2(5) x Z/2), not perfect, abelianization [2], not a central product of quasisimples");
    c.data = {{"order", a.order},
              {"center_order", a.center_order},
              {"central_ext_of_semisimple", a.central_ext_of_semisimple}};
    out.push_back(std::move(c));
  }
  return out;
}

Checks criterion_checks(int id, CertOptions const& opts) {
  switch (id) {
    case 1: return criterion_a5();
    case 2: return criterion_gn(opts);
    case 3: return criterion_b();
    case 4: return criterion_mn(opts);
    case 5: return criterion_actions(opts);
    case 6: return criterion_avm(opts);
    case 7: return criterion_diameter(opts);
    case 8: return criterion_duality(opts);
    case 9: return criterion_obstruction(opts);
    case 10: return criterion_classification();
    default: throw ParameterError("no acceptance criterion " + std::to_string(id));
  }
}

Check aggregate(Criterion const& cr, Checks subs, double elapsed_ms) {
  Check c;
  c.name = "criterion." + std::to_string(cr.id) + " " + cr.title;
  c.elapsed_ms = elapsed_ms;
  std::size_t passed = 0;
  std::string first_bad;
  auto arr = nlohmann::json::array();
  for (auto const& s : subs) {
    bool bad = s.status == Status::fail || s.status == Status::skipped;
    if (!bad) ++passed;
    if (bad && first_bad.empty()) first_bad = s.name + ": " + s.details;
    arr.push_back(to_json(s, true));
  }
  bool in_time = cr.bound_ms == 0 || elapsed_ms <= cr.bound_ms;
  c.status = first_bad.empty() && in_time ? Status::pass : Status::fail;
  c.details = std::to_string(passed) + "/" + std::to_string(subs.size()) + " sub-checks";
  if (cr.bound_ms > 0) c.details += in_time ? ", within the time bound" : ", time bound exceeded";
  if (!first_bad.empty()) c.witness = first_bad;
  c.data = {{"checks", arr}};
  if (cr.bound_ms > 0) c.data["bound_ms"] = cr.bound_ms;
  return c;
}

}  // namespace

std::vector<Criterion> const& acceptance_criteria() {
  static std::vector<Criterion> const list{
      {1, "A5 fixed-point lemma", 1000},
      {2, "G_n width-2 certificate", 30000},
      {3, "B and f", 1000},
      {4, "M_n x| G_n perfect", 5000},
      {5, "action well-defined", 0},
      {6, "AVM identities", 0},
      {7, "[M,G] diameter", 0},
      {8, "invariant functional", 0},
      {9, "no global invariant functional", 10000},
      {10, "classification catalog", 120000},
      {11, "determinism", 0},
  };
  return list;
}

Check run_criterion(int id, SuiteOptions const& opts) {
  auto const& list = acceptance_criteria();
  if (id < 1 || id > static_cast<int>(list.size())) throw ParameterError("no acceptance criterion " + std::to_string(id));
  Criterion const& cr = list[static_cast<std::size_t>(id - 1)];
  auto const start = std::chrono::steady_clock::now();
  Checks subs;
  if (id == 11) {
    SuiteOptions inner = opts;
    inner.inject_fault.reset();
    auto a = run_suite(inner, false).to_json(true).dump();
    auto b = run_suite(inner, false).to_json(true).dump();
    auto c = make_check("suite.stable_json_identical", a == b,
                        "two runs with seed " + std::to_string(opts.cert.seed) + " serialize to " +
                            std::to_string(a.size()) + " identical bytes");
    c.data = {{"bytes", a.size()}};
    subs.push_back(std::move(c));
  } else {
    subs = guarded("criterion." + std::to_string(id) + ".exception",
                   [&] { return criterion_checks(id, opts.cert); });
  }
  if (opts.inject_fault == id)
    subs.push_back(make_check("fault.injected", false, "deliberate failure requested by the harness"));
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return aggregate(cr, std::move(subs), ms);
}

Report run_suite(SuiteOptions const& opts, bool with_determinism) {
  nlohmann::json params = {{"primary", {{"p", kPrimary.p}, {"q", kPrimary.q}, {"m", kPrimary.m}, {"n", kPrimary.n}}},
                           {"cross", {{"p", kCross.p}, {"q", kCross.q}, {"m", kCross.m}, {"n", kCross.n}}},
                           {"seed", opts.cert.seed},
                           {"samples", opts.cert.samples}};
  Report report("suite", params);
  for (auto const& cr : acceptance_criteria()) {
    if (cr.id == 11 && !with_determinism) continue;
    report.add(run_criterion(cr.id, opts));
  }
  return report;
}

}  // namespace finperf
