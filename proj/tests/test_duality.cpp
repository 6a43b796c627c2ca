#include <set>

#include "doctest.h"
#include "finperf/arith.hpp"
#include "finperf/duality.hpp"

using namespace finperf;

namespace {

Params P(unsigned p, std::uint32_t q, std::uint32_t m, std::size_t n) { return Params{p, q, m, n}; }

Check const& find(std::vector<Check> const& cs, std::string const& prefix) {
  for (auto const& c : cs)
    if (c.name.starts_with(prefix)) return c;
  throw std::runtime_error("no check " + prefix);
}

FqVector vec(Params const& params, std::vector<std::int64_t> const& c) { return FqVector(params.q, c, params.n); }

std::vector<FqVector> nonzero_elements(Params const& params) {
  auto all = vn_space(params).elements();
  std::erase_if(all, [](FqVector const& v) { return v.is_zero(); });
  return all;
}

// Coordinates of t in the basis b_i = e_i - e_{i+1}: t_1 + .. + t_i, computed by hand.
std::uint32_t oracle_coordinate(BElement const& t, unsigned i, std::uint32_t m) {
  std::uint64_t s = 0;
  for (unsigned k = 0; k < i; ++k) s += t[k];
  return static_cast<std::uint32_t>(s % m);
}

std::uint32_t oracle_eval(Functional const& phi, MnElement const& x) {
  std::uint64_t acc = 0;
  std::uint32_t const m = phi.params().m;
  for (auto const& [key, c] : phi.coefficients()) acc += std::uint64_t{c} * oracle_coordinate(x(key.first), key.second, m);
  return static_cast<std::uint32_t>(acc % m);
}

Functional random_functional(Params const& params, std::vector<FqVector> const& vs, Rng& rng) {
  Functional phi(params);
  std::size_t k = rng() % 5;
  for (std::size_t j = 0; j < k; ++j)
    phi.add(vs[rng() % vs.size()], 1 + static_cast<unsigned>(rng() % (params.q - 1)), static_cast<std::int64_t>(rng() % params.m));
  return phi;
}

}  // namespace

TEST_CASE("phi_v on basis elements") {
  auto const params = P(5, 3, 2, 1);
  auto const vs = nonzero_elements(params);
  auto const v = vs[3];
  auto const phi = phi_v(params, v);
  CHECK(phi(MnElement::basis(params, v, 1)) == 1);
  CHECK(phi(MnElement::basis(params, v, 2)) == 0);
  for (auto const& w : vs)
    if (w != v) CHECK(phi(MnElement::basis(params, w, 1)) == 0);
  CHECK(phi.support() == std::vector<FqVector>{v});
  CHECK_THROWS_AS(phi_v(params, block_zero(5, 3, 1)), ParameterError);
  CHECK_THROWS_AS(phi_v(params, vec(params, {1, 0, 0, 0, 0})), ParameterError);  // not sum-zero
}

TEST_CASE("functional arithmetic and support") {
  auto const params = P(5, 2, 3, 1);
  auto const vs = nonzero_elements(params);
  Functional zero(params);
  CHECK(zero.support().empty());
  auto const a = phi_v(params, vs[0]), b = phi_v(params, vs[1]);
  auto const ab = (a + b).support();
  CHECK(std::set<FqVector>(ab.begin(), ab.end()) == std::set<FqVector>{vs[0], vs[1]});
  CHECK((a - a).support().empty());
  CHECK((a - a) == zero);
  CHECK(a.scaled(3) == zero);  // m = 3
  CHECK(a.scaled(-1).coefficient(vs[0], 1) == 2);
  CHECK_THROWS_AS(Functional(params).add(vs[0], 0, 1), ParameterError);
  CHECK_THROWS_AS(Functional(params).add(vs[0], 2, 1), ParameterError);  // q = 2 has only i = 1
  CHECK_THROWS_AS(a + phi_v(P(5, 2, 7, 1), vs[0]), ParameterError);
}

TEST_CASE("functional serialization") {
  auto const params = P(5, 2, 3, 1);
  auto const v = nonzero_elements(params)[0];
  auto j = to_json(phi_v(params, v).scaled(2));
  REQUIRE(j.size() == 1);
  CHECK(j[0]["i"] == 1);
  CHECK(j[0]["c"] == 2);
  CHECK(j[0]["v"].size() == 5);
}

TEST_CASE("property: evaluation matches the coordinate oracle and is additive") {
  for (auto const& params : {P(5, 2, 3, 1), P(5, 3, 2, 1), P(5, 3, 4, 1), P(7, 2, 9, 1)}) {
    auto const vs = nonzero_elements(params);
    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
      auto phi = random_functional(params, vs, rng);
      auto x = random_mn(params, vs, rng), y = random_mn(params, vs, rng);
      CHECK(phi(x) == oracle_eval(phi, x));
      CHECK(phi(x + y) == (phi(x) + phi(y)) % params.m);
      CHECK(phi(-x) == (params.m - phi(x)) % params.m);
    }
  }
}

TEST_CASE("property: support criterion") {
  auto const params = P(5, 3, 4, 1);
  auto const vs = nonzero_elements(params);
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    auto phi = random_functional(params, vs, rng);
    std::set<FqVector> by_eval;
    for (auto const& v : vs)
      for (unsigned i = 1; i < params.q; ++i)
        if (phi(MnElement::basis(params, v, i)) != 0) by_eval.insert(v);
    auto supp = phi.support();
    CHECK(std::set<FqVector>(supp.begin(), supp.end()) == by_eval);
  }
}

TEST_CASE("property: phi_{v^s}(x^s) = phi_v(x)") {
  // With the right action x^s(w) = x(w^(s^-1)) this is the same identity as
  // phi_v(x^s) = phi_{v^(s^-1)}(x).
  auto const params = P(5, 3, 2, 1);
  auto const vs = nonzero_elements(params);
  auto const a5 = alternating_group(5).elements;
  Rng rng(3);
  for (int t = 0; t < 300; ++t) {
    auto const& v = vs[rng() % vs.size()];
    auto const& s = a5[rng() % a5.size()];
    auto x = random_mn(params, vs, rng);
    CHECK(phi_v(params, permute_blocks(v, s))(x.act(s)) == phi_v(params, v)(x));
    CHECK(phi_v(params, v)(x.act(s)) == phi_v(params, permute_blocks(v, s.inverse()))(x));
  }
}

TEST_CASE("null sets") {
  auto const params = P(5, 2, 3, 1);
  auto const vs = nonzero_elements(params);
  auto const zero = block_zero(5, 2, 1);

  auto n0 = null_set(MnElement(params));
  CHECK(n0.cofinite);
  CHECK(n0.listed.empty());
  CHECK(n0.describe() == "V_n");
  for (auto const& v : vs) CHECK(n0.contains(v));
  CHECK(n0.contains(zero));

  auto n1 = null_set(MnElement::basis(params, vs[2], 1));
  CHECK(n1.contains(zero));
  for (auto const& v : vs) CHECK(n1.contains(v) == (v != vs[2]));

  auto nz = null_set(z_n(params));
  CHECK(!nz.cofinite);
  CHECK(nz.listed == std::set<FqVector>{zero});
}

TEST_CASE("property: null sets agree with enumeration and are monotone") {
  for (auto const& params : {P(5, 2, 3, 1), P(5, 3, 2, 1)}) {
    auto const vs = nonzero_elements(params);
    auto const all = vn_space(params).elements();
    Rng rng(5);
    for (int t = 0; t < 150; ++t) {
      auto x = random_mn(params, vs, rng), y = random_mn(params, vs, rng);
      // Force cancellations on some keys.
      if (t % 3 == 0 && !x.sparse().empty()) {
        auto const& [w, b] = *x.sparse().begin();
        y = y - MnElement::single(params, w, x(w) - y(w));
      }
      auto nx = null_set(x), ny = null_set(y), nxy = null_set(x + y);
      for (auto const& w : all) {
        bool expect = w.is_zero() || x(w).is_zero();
        CHECK(nx.contains(w) == expect);
        if (nx.contains(w) && ny.contains(w)) CHECK(nxy.contains(w));
      }
    }
  }
}

TEST_CASE("z_n") {
  for (auto const& params : {P(5, 2, 3, 1), P(5, 3, 2, 1), P(5, 2, 3, 2)}) {
    auto const z = z_n(params);
    auto const b1 = b_basis(params.q, params.m)[0];
    for (auto const& v : nonzero_elements(params)) {
      CHECK(z(v) == b1);
      CHECK(phi_v(params, v)(z) == 1);
    }
  }
  // Large n stays representable.
  auto const big = P(5, 2, 3, 40);
  auto z = z_n(big);
  FqVector v = block_zero(5, 2, 40);
  v.set(7, 1);
  v.set(40 + 7, 1);
  CHECK(z(v) == b_basis(2, 3)[0]);
}

TEST_CASE("property: supp(phi) orthogonal to v forces phi([x, v]) = 0") {
  auto const params = P(5, 3, 2, 1);
  auto const vs = nonzero_elements(params);
  Rng rng(19);
  std::size_t exercised = 0;
  for (int t = 0; t < 400; ++t) {
    auto phi = random_functional(params, vs, rng);
    auto const& v = vs[rng() % vs.size()];
    bool orth = true;
    for (auto const& s : phi.support()) orth = orth && inner(s, v).value == 0;
    if (!orth) continue;
    ++exercised;
    auto x = random_mn(params, vs, rng);
    CHECK(phi(commutator(x, GnElement{v, Permutation(5)})) == 0);
  }
  CHECK(exercised > 50);
}

TEST_CASE("invariant functional at (5,2,3,2)") {
  auto const params = P(5, 2, 3, 2);
  auto const d = standard_defining_vector(params);
  CHECK(d == vec(params, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0}));  // -e_1 = e_1 over F_2
  auto inv = invariant_functional(params, {d});
  CHECK(inv.orbit_vector.u == FqVector(2, {0, 1}));
  CHECK(inv.orbit.size() == 5);
  CHECK(inv.pre_rescale == 5);
  CHECK(inv.phi(z_n(params)) == 1);
  CHECK(inv.phi.support() == inv.orbit);
  for (auto const& v : inv.orbit) {
    CHECK(inner(v, d).value == 0);
    CHECK(inv.w.contains(v));
    CHECK(inv.phi.coefficient(v, 1) == mod_inverse(5 % 3, 3));
  }
  // Over F_2, w = (u, u, u, u, -4u) = (u, u, u, u, 0): the zero block can sit anywhere.
  CHECK(std::set<FqVector>(inv.orbit.begin(), inv.orbit.end()).size() == 5);

  auto checks = check_invariance(inv.phi, params, {d});
  CHECK(find(checks, "duality.ap_invariance").passed());
  CHECK(find(checks, "duality.wperp_invariance").passed());
  auto const& global = find(checks, "duality.global_invariance");
  CHECK(global.status == Status::not_applicable);
  CHECK(global.witness.has_value());

  auto psi = extend_invariant_functional(
      inv.phi, [&] {
        std::vector<GnElement> h;
        for (auto const& s : alternating_generators(5)) h.push_back({block_zero(5, 2, 2), s});
        return h;
      }());
  CertOptions opts;
  opts.samples = 1000;
  auto hom = extension_homomorphism_check(psi, opts);
  CHECK(hom.passed());
  CHECK(hom.data["samples"] == 1000);
}

TEST_CASE("invariant functional construction across parameters") {
  for (auto const& params : {P(5, 3, 2, 2), P(5, 2, 7, 3), P(7, 2, 3, 2), P(5, 3, 4, 2)}) {
    auto const d = standard_defining_vector(params);
    auto inv = invariant_functional(params, {d});
    CHECK(inv.orbit.size() == params.p);
    CHECK(inv.pre_rescale == params.p);
    CHECK(inv.phi(z_n(params)) == 1 % params.m);
    auto checks = check_invariance(inv.phi, params, {d});
    CHECK(find(checks, "duality.ap_invariance").passed());
    CHECK(find(checks, "duality.wperp_invariance").passed());
  }
}

TEST_CASE("invariant functional errors and vacuous cases") {
  // n = 1: the components of (e_1, -e_1) span F_q, so no direction is left.
  CHECK_THROWS_AS(invariant_functional(P(5, 2, 3, 1), {standard_defining_vector(P(5, 2, 3, 1))}), NoSuchVector);
  CHECK_THROWS_AS(invariant_functional(P(5, 2, 1, 2), {}), ParameterError);
  auto const params = P(5, 2, 3, 2);
  CHECK_THROWS_AS(invariant_functional(params, {vec(params, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0})}), ParameterError);

  // W = V_n: nothing to be invariant under besides A_p.
  auto inv = invariant_functional(params, {});
  CHECK(inv.w == vn_space(params));
  auto checks = check_invariance(inv.phi, params, {});
  auto const& wperp = find(checks, "duality.wperp_invariance");
  CHECK(wperp.passed());
  CHECK(wperp.details.find("vacuous") != std::string::npos);
}

TEST_CASE("phi_v alone is not A_p-invariant") {
  auto const params = P(5, 2, 3, 1);
  auto const v = vec(params, {1, 1, 0, 0, 0});
  auto checks = check_invariance(phi_v(params, v), params, {});
  auto const& ap = find(checks, "duality.ap_invariance");
  CHECK(ap.failed());
  REQUIRE(ap.witness.has_value());
  CHECK(ap.witness->find("s=") == 0);
}

TEST_CASE("extension needs invariance; trivial H restricts to phi") {
  auto const params = P(5, 2, 3, 1);
  auto const vs = nonzero_elements(params);
  auto const phi = phi_v(params, vs[0]);
  std::vector<GnElement> ap;
  for (auto const& s : alternating_generators(5)) ap.push_back({block_zero(5, 2, 1), s});
  CHECK_THROWS_AS(extend_invariant_functional(phi, ap), VerificationFailure);

  auto psi = extend_invariant_functional(phi, {});
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    auto x = random_mn(params, vs, rng);
    CHECK(psi(PnElement{x, gn_identity(params)}) == phi(x));
  }
  CertOptions opts;
  opts.samples = 200;
  CHECK(extension_homomorphism_check(psi, opts).passed());
}

TEST_CASE("no G_n-invariant functional is nonzero on z_n") {
  for (auto const& params : {P(5, 2, 3, 1), P(5, 3, 2, 1)}) {
    auto checks = no_global_invariant_functional(params);
    REQUIRE(checks.size() == 2);
    CHECK(find(checks, "duality.no_global_invariant.solve").passed());
    CHECK(find(checks, "duality.no_global_invariant.witness").passed());
  }
  auto c = no_global_invariant_functional(P(5, 2, 3, 1));
  CHECK(find(c, "duality.no_global_invariant.solve").data["coefficients"] == 15);
  auto d = no_global_invariant_functional(P(5, 3, 2, 1));
  CHECK(find(d, "duality.no_global_invariant.solve").data["coefficients"] == 160);

  // Skipped above the cap.
  auto big = no_global_invariant_functional(P(5, 2, 3, 5));
  CHECK(big[0].status == Status::skipped);
  CHECK(big[1].status == Status::skipped);
}

TEST_CASE("oracle: translation-invariant functionals vanish at (5,2,3,1)") {
  // For q = 2, f(b_1) = -b_1, so x_{w->1}^v = (-1)^<v, w> x_{w->1}. A coefficient
  // c_w survives translation by v only if c_w = (-1)^<v,w> c_w. Solve per key.
  auto const params = P(5, 2, 3, 1);
  auto const vs = nonzero_elements(params);
  for (auto const& w : vs) {
    std::set<std::uint32_t> solutions;
    for (std::uint32_t c = 0; c < 3; ++c) {
      bool ok = true;
      for (auto const& v : vs) {
        unsigned ip = 0;
        for (std::size_t k = 0; k < 5; ++k) ip += v[k] * w[k];
        if (ip % 2 == 1 && (3 - c) % 3 != c) ok = false;
      }
      if (ok) solutions.insert(c);
    }
    CHECK(solutions == std::set<std::uint32_t>{0});
  }
}
