#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "finperf/acceptance.hpp"
#include "finperf/cli.hpp"
#include "finperf/error.hpp"

using namespace finperf;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, int expect = 0) {
  args.push_back("--json");
  args.push_back("-");
  args.push_back("--stable");
  auto r = run(args);
  REQUIRE(r.code == expect);
  return nlohmann::json::parse(r.out);
}

nlohmann::json const* check_named(nlohmann::json const& report, std::string const& prefix) {
  for (auto const& c : report["checks"])
    if (c["name"].get<std::string>().starts_with(prefix)) return &c;
  return nullptr;
}

void check_schema(nlohmann::json const& j) {
  REQUIRE(j.contains("command"));
  REQUIRE(j.contains("params"));
  REQUIRE(j.contains("summary"));
  REQUIRE(j["checks"].is_array());
  std::size_t pass = 0, fail = 0, skip = 0;
  std::set<std::string> const allowed{"pass", "fail", "skipped", "not-applicable"};
  for (auto const& c : j["checks"]) {
    auto s = c["status"].get<std::string>();
    CHECK(allowed.count(s) == 1);
    CHECK_FALSE(c.contains("elapsed_ms"));
    (s == "pass" ? pass : s == "fail" ? fail : skip)++;
  }
  CHECK(j["summary"]["passed"] == pass);
  CHECK(j["summary"]["failed"] == fail);
  CHECK(j["summary"]["skipped"] == skip);
}

}  // namespace

TEST_CASE("default modulus") {
  CHECK(default_modulus(5, 2) == 3);
  CHECK(default_modulus(5, 3) == 2);
  CHECK(default_modulus(7, 2) == 3);
  CHECK(default_modulus(7, 3) == 2);
}

TEST_CASE("cli: verify-a5") {
  auto r = run({"verify-a5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("a5.fixed_point_lemma") != std::string::npos);
  auto j = run_json({"verify-a5"});
  check_schema(j);
  CHECK(j["checks"][0]["data"]["solutions"].get<int>() > 0);
  CHECK(j["checks"][0]["data"]["pairs"] == 3600);
}

TEST_CASE("cli: certify") {
  auto pn = run_json({"certify", "pn", "--p", "5", "--q", "2", "--m", "3", "--n", "1"});
  check_schema(pn);
  CHECK(pn["summary"]["failed"] == 0);
  CHECK(pn["summary"]["skipped"] == 0);
  CHECK(check_named(pn, "pn.perfect")->at("status") == "pass");

  auto gn = run_json({"certify", "gn", "--p", "5", "--q", "2", "--n", "1"});
  CHECK(gn["params"]["m"] == 3);
  auto const* w = check_named(gn, "gn.exact_width");
  REQUIRE(w);
  CHECK((*w)["data"]["width"] == 2);

  auto mn = run_json({"certify", "mn", "--p", "5", "--q", "3", "--m", "2", "--n", "1", "--samples", "200"});
  CHECK(mn["summary"]["failed"] == 0);
  CHECK(mn["params"]["samples"] == 200);

  auto du = run_json({"certify", "duality", "--p", "5", "--q", "2", "--m", "3", "--n", "2"});
  CHECK(du["summary"]["failed"] == 0);
  CHECK(check_named(du, "duality.invariant_functional")->at("data")["support_size"] == 5);
  auto const& fn = check_named(du, "duality.invariant_functional")->at("data")["functional"];
  CHECK(fn.size() == 5);
  CHECK(fn[0].contains("v"));
  CHECK(fn[0]["c"] == 2);  // 5^-1 mod 3

  // n = 1 leaves no direction: reported, not failed.
  auto d1 = run_json({"certify", "duality", "--n", "1"});
  CHECK(check_named(d1, "duality.invariant_functional")->at("status") == "not-applicable");
  CHECK(check_named(d1, "duality.no_global_invariant.solve")->at("status") == "pass");
}

TEST_CASE("cli: parameter and usage errors exit 2") {
  CHECK(run({"certify", "gn", "--p", "7", "--q", "5", "--m", "10"}).code == 2);
  CHECK(run({"certify", "gn", "--m", "10", "--q", "5"}).code == 2);
  CHECK(run({"certify", "gn", "--p", "4"}).code == 2);
  CHECK(run({"certify", "gn", "--p", "x"}).code == 2);
  CHECK(run({"certify", "bogus"}).code == 2);
  CHECK(run({"certify"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--frobnicate"}).code == 2);
  CHECK(run({"suite", "--samples", "0"}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  CHECK(run({"analyze", "--group", "nonsense"}).code == 2);
  CHECK(run({"verify-a5", "--json", "/nonexistent-dir/x.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli: analyze") {
  auto a5 = run_json({"analyze", "--group", "a5"});
  check_schema(a5);
  auto const& d = check_named(a5, "analyze.structure")->at("data");
  CHECK(d["simple"] == true);
  CHECK(d["semisimple"] == true);
  CHECK(d["quasisimple"] == true);
  CHECK(d["almost_simple"] == true);
  CHECK(d["commutator_width"] == 1);

  auto sd = run_json({"analyze", "--group", "subdirect-sl25"});
  auto const& e = check_named(sd, "analyze.structure")->at("data");
  CHECK(e["perfect"] == false);
  CHECK(e["abelianization"] == nlohmann::json::array({2}));
  CHECK(e["order"] == 240);
  CHECK(check_named(sd, "analyze.commutator_width")->at("status") == "not-applicable");

  auto s5 = run_json({"analyze", "--group", "s5"});
  auto const& f = check_named(s5, "analyze.structure")->at("data");
  CHECK(f["almost_simple"] == true);
  CHECK(f["perfect"] == false);
  CHECK(f["cr_radical_order"] == 60);
  CHECK(f["solvable_radical_order"] == 1);

  // Above the width cap the width is skipped, not failed.
  auto big = run_json({"analyze", "--group", "gn(5,3,1)", "--cap-width", "100"});
  CHECK(check_named(big, "analyze.commutator_width")->at("status") == "skipped");
}

TEST_CASE("cli: resource cap exits 3 with a partial report") {
  auto r = run({"analyze", "--group", "gn(5,2,3)", "--json", "-"});
  CHECK(r.code == 3);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["checks"][0]["name"] == "resource_cap");
  CHECK(j["checks"][0]["status"] == "skipped");
  CHECK(j["checks"][0]["data"].contains("partial"));  // G_n's order is known up front, so nothing is enumerated
  auto e = run({"analyze", "--group", "perm{(1 2 3 4 5 6 7);(1 2)}", "--cap-enum", "1000", "--json", "-"});
  CHECK(e.code == 3);
  CHECK(nlohmann::json::parse(e.out)["checks"][0]["data"]["partial"].get<int>() > 0);
  CHECK(run({"analyze", "--group", "a5", "--cap-enum", "10"}).code == 3);
}

TEST_CASE("cli: json file output is byte-stable") {
  std::string const a = "cli_test_a.json", b = "cli_test_b.json";
  REQUIRE(run({"certify", "mn", "--stable", "--seed", "7", "--json", a}).code == 0);
  REQUIRE(run({"certify", "mn", "--stable", "--seed", "7", "--json", b}).code == 0);
  auto slurp = [](std::string const& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  CHECK(!slurp(a).empty());
  CHECK(slurp(a) == slurp(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("acceptance: criteria, fault injection, bad ids") {
  CHECK(acceptance_criteria().size() == 11);
  CHECK(run_criterion(1).passed());
  CHECK(run_criterion(3).passed());
  SuiteOptions faulty;
  faulty.inject_fault = 3;
  auto c = run_criterion(3, faulty);
  CHECK(c.failed());
  REQUIRE(c.witness.has_value());
  CHECK(c.witness->find("fault.injected") == 0);
  CHECK_THROWS_AS(run_criterion(0), ParameterError);
  CHECK_THROWS_AS(run_criterion(12), ParameterError);

  auto r = run({"suite", "--inject-fault", "7", "--json", "-", "--stable"});
  CHECK(r.code == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["summary"]["failed"] == 1);
  CHECK(check_named(j, "criterion.7")->at("status") == "fail");
  check_schema(j);
}
