#include <chrono>
#include <set>

#include "doctest.h"
#include "finperf/arith.hpp"
#include "finperf/constructions.hpp"
#include "finperf/zmod.hpp"

using namespace finperf;

namespace {

Params P(unsigned p, std::uint32_t q, std::uint32_t m, std::size_t n) { return Params{p, q, m, n}; }

bool all_pass(std::vector<Check> const& cs) {
  for (auto const& c : cs) {
    if (!c.passed()) {
      MESSAGE(c.name << ": " << c.details);
      return false;
    }
  }
  return true;
}

Check const& find(std::vector<Check> const& cs, std::string const& prefix) {
  for (auto const& c : cs)
    if (c.name.starts_with(prefix)) return c;
  throw std::runtime_error("no check " + prefix);
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(P(5, 2, 3, 1).validate());
  CHECK_NOTHROW(P(7, 3, 2, 1).validate());
  CHECK_THROWS_AS(P(4, 2, 3, 1).validate(), ParameterError);
  CHECK_THROWS_AS(P(3, 2, 5, 1).validate(), ParameterError);
  CHECK_THROWS_AS(P(5, 5, 3, 1).validate(), ParameterError);
  CHECK_THROWS_AS(P(5, 6, 7, 1).validate(), ParameterError);
  CHECK_THROWS_AS(P(5, 2, 10, 1).validate(), ParameterError);   // gcd(m, p)
  CHECK_THROWS_AS(P(5, 3, 6, 1).validate(), ParameterError);    // gcd(m, q)
  CHECK_THROWS_AS(P(7, 5, 10, 1).validate(), ParameterError);   // m sharing a factor with q
  CHECK_THROWS_AS(P(5, 2, 3, 0).validate(), ParameterError);
  CHECK_THROWS_AS(P(5, 2, 0, 1).validate(), ParameterError);
}

TEST_CASE("B elements and the shift") {
  BElement b(2, {1, 1, 0});
  CHECK(b.f() == BElement(2, {0, 1, 1}));
  CHECK(b.f_power(3) == b);
  CHECK(b.f_power(-1) == BElement(2, {1, 0, 1}));
  CHECK_THROWS_AS(BElement(3, {1, 1, 0}), ParameterError);
  CHECK(BElement(3, 4).is_zero());
  CHECK(BElement(3, 4).coordinates() == std::vector<std::uint32_t>{0, 0});
  auto basis = b_basis(5, 6);
  REQUIRE(basis.size() == 4);
  CHECK(basis[0] == BElement(6, {1, -1, 0, 0, 0}));
  CHECK(basis[1] == BElement(6, {0, 1, -1, 0, 0}));
  CHECK(basis[0].coordinates() == std::vector<std::uint32_t>{1, 0, 0, 0});
  CHECK(basis[2].coordinates() == std::vector<std::uint32_t>{0, 0, 1, 0});
}

TEST_CASE("B round trip over all elements at (q=3, m=4)") {
  auto all = b_elements(3, 4, 1000);
  CHECK(all.size() == 16);
  std::set<BElement> distinct(all.begin(), all.end());
  CHECK(distinct.size() == 16);
  auto basis = b_basis(3, 4);
  for (auto const& b : all) {
    CHECK(b.sums_to_zero());
    auto c = b.coordinates();
    CHECK(basis[0].scaled(c[0]) + basis[1].scaled(c[1]) == b);
    CHECK(BElement::from_coordinates(3, 4, c) == b);
  }
  CHECK_THROWS_AS(b_elements(7, 10, 1000), ResourceError);
}

TEST_CASE("f - id inverse and determinant") {
  for (auto [q, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {3, 4}, {5, 6}, {7, 4}}) {
    for (auto const& b : b_elements(q, m, 100000)) {
      CHECK(f_minus_id(f_minus_id_inverse(b)) == b);
      CHECK(f_minus_id_inverse(f_minus_id(b)) == b);
    }
    // det(f - id) on B is +-q: the characteristic polynomial is 1 + x + .. + x^(q-1).
    auto det = determinant_mod(f_minus_id_matrix(q), 1000);
    CHECK((det == q || det == 1000 - q));
  }
}

TEST_CASE("B/f suite") {
  for (auto [q, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {3, 4}, {5, 6}})
    CHECK(all_pass(b_module_checks(q, m)));
  CHECK_THROWS_AS(b_module_checks(3, 6), ParameterError);
  CHECK_THROWS_AS(b_module_checks(4, 3), ParameterError);
}

TEST_CASE("G_n law") {
  auto params = P(5, 2, 3, 1);
  auto g = build_Gn(params);
  CHECK(g.group.order() == 960);
  CHECK(g.elements[0] == gn_identity(params));
  CHECK(gn_order(params) == 960);
  CHECK(gn_order(P(5, 2, 3, 2)) == 15360);
  CHECK(gn_order(P(5, 3, 2, 1)) == 4860);
  CHECK_THROWS_AS(build_Gn(P(5, 2, 3, 3)), ResourceError);
  CHECK_THROWS_AS(build_Gn(P(5, 2, 3, 2), GroupOptions{10000, 6000}), ResourceError);
  Rng rng(1);
  auto vn = vn_space(params);
  auto ap = alternating_group(5).elements;
  for (int i = 0; i < 200; ++i) {
    auto a = random_gn(params, vn, ap, rng), b = random_gn(params, vn, ap, rng), c = random_gn(params, vn, ap, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * a.inverse() == gn_identity(params));
    CHECK(vn.contains((a * b).v));
    // Conjugating a pure vector by a permutation is the block action.
    GnElement s{block_zero(5, 2, 1), a.sigma}, v{b.v, Permutation(5)};
    CHECK(s.inverse() * v * s == GnElement{permute_blocks(b.v, a.sigma), Permutation(5)});
  }
}

TEST_CASE("certificate p-cycle shifts blocks right") {
  FqVector v(3, {1, 2, 0, 0, 0}, 1);
  CHECK(permute_blocks(v, certificate_cycle(5)) == FqVector(3, {0, 1, 2, 0, 0}, 1));
}

TEST_CASE("G_n certificate at (5,2,1) and (5,3,1)") {
  auto a = certify_Gn_perfect_width2(P(5, 2, 3, 1));
  CHECK(all_pass(a));
  CHECK(find(a, "gn.exact_width").data["width"] == 2);
  auto b = certify_Gn_perfect_width2(P(5, 3, 2, 1));
  CHECK(all_pass(b));
  CHECK(find(b, "gn.exact_width").data["width"] == 2);
  auto big = certify_Gn_perfect_width2(P(5, 2, 3, 3));
  CHECK(find(big, "gn.exact_width").status == Status::skipped);
  CHECK(find(big, "gn.width_at_most_2").passed());
}

TEST_CASE("tightness witness needs two commutators") {
  auto params = P(5, 2, 3, 1);
  auto c = gn_tightness_check(params);
  CHECK(c.passed());
  // Exhaustive oracle: no pair of G_1 has the witness as commutator.
  auto g = build_Gn(params);
  GnElement x{FqVector(2, {1, 0, 0, 0, 1}, 1), Permutation::parse_cycles("(1 2)(3 4)", 5)};
  Index xi = g.index_of(x);
  bool found = false;
  for (Index a = 0; a < g.group.order() && !found; ++a)
    for (Index b = 0; b < g.group.order() && !found; ++b) found = g.group.comm(a, b) == xi;
  CHECK_FALSE(found);
  // Same vector with trivial fifth component is a single commutator.
  GnElement y{FqVector(2, {1, 1, 0, 0, 0}, 1), Permutation::parse_cycles("(1 2)(3 4)", 5)};
  CHECK(commutator_length(g.group, g.index_of(y)) == 1);
}

TEST_CASE("M_n elements") {
  auto params = P(5, 2, 3, 1);
  FqVector v(2, {1, 1, 0, 0, 0}, 1), w(2, {0, 1, 1, 0, 0}, 1);
  auto b1 = b_basis(2, 3)[0];
  auto x = MnElement::single(params, v, b1);
  CHECK(x(v) == b1);
  CHECK(x(w).is_zero());
  CHECK(x(block_zero(5, 2, 1)).is_zero());
  CHECK((x - x).is_zero());
  CHECK_THROWS_AS(MnElement::single(params, block_zero(5, 2, 1), b1), ParameterError);
  CHECK_THROWS_AS(MnElement::single(params, FqVector(2, {1, 0, 0, 0, 0}, 1), b1), ParameterError);
  CHECK_THROWS_AS(MnElement::basis(params, v, 2), ParameterError);
  // x_{v->b}^s = x_{v^s->b}
  auto s = Permutation::parse_cycles("(1 2 3)", 5);
  CHECK(x.act(s) == MnElement::single(params, permute_blocks(v, s), b1));
  // x^v(w) = f^<v,w>(x(w)); <v, v> = 0 over F_2 here.
  CHECK(x.act(w)(v) == b1.f());
  CHECK(x.act(v) == x);
  // A dense term equals its sparse expansion.
  auto d = MnElement::dense(params, b1, w);
  MnElement expanded(params);
  for (auto const& u : vn_space(params).elements())
    if (!u.is_zero()) expanded = expanded + MnElement::single(params, u, b1.f_power(inner(w, u).value));
  CHECK(d == expanded);
  CHECK(d.act(v) == expanded.act(v));
  CHECK(d.act(s) == expanded.act(s));
}

TEST_CASE("M_n action properties") {
  auto params = P(5, 2, 3, 1);
  auto cs = action_checks(params, CertOptions{20000, 20000, 10000, 300, 7});
  CHECK(all_pass(cs));
  auto cs2 = action_checks(P(5, 3, 2, 1), CertOptions{20000, 20000, 10000, 200, 8});
  CHECK(all_pass(cs2));
}

TEST_CASE("M_n perfectness certificate") {
  auto t0 = std::chrono::steady_clock::now();
  CHECK(all_pass(certify_Mn_perfect(P(5, 2, 3, 1))));
  CHECK(all_pass(certify_Mn_perfect(P(5, 3, 2, 1))));
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(5));
  CHECK(all_pass(certify_Pn_perfect(P(5, 2, 3, 1))));
}

TEST_CASE("AVM identities") {
  CHECK(all_pass(avm_identities_check(P(5, 2, 3, 1), CertOptions{20000, 20000, 10000, 300, 3})));
  CHECK(all_pass(avm_identities_check(P(5, 3, 4, 1), CertOptions{20000, 20000, 10000, 100, 4})));
  auto params = P(5, 2, 3, 1);
  MnElement zero(params);
  auto zv = block_zero(5, 2, 1);
  CHECK(commutator(zero, GnElement{zv, Permutation(5)}).is_zero());
  Rng rng(2);
  std::vector<FqVector> nz;
  for (auto const& v : vn_space(params).elements())
    if (!v.is_zero()) nz.push_back(v);
  auto x = random_mn(params, nz, rng);
  CHECK(commutator(x, GnElement{zv, Permutation(5)}).is_zero());
}

TEST_CASE("[M, G] diameter on V_1 x| A_5") {
  auto c = mg_diameter_check(P(5, 2, 3, 1));
  CHECK(c.passed());
  CHECK(c.data["width"] == 2);
  CHECK(c.data["diameter"] == 1);
  CHECK(c.data["generated_order"] == 16);
}

TEST_CASE("[M, G] diameter degenerate cases") {
  // Trivial G: no commutators, M nontrivial.
  auto a5 = alternating_group(5);
  auto const& g = a5.group;
  Bitset m(g.order()), triv(g.order());
  triv.set(0);
  for (Index i = 0; i < g.order(); ++i) m.set(i);
  CHECK(mg_diameter_check(g, m, triv).status == Status::not_applicable);
  Bitset one(g.order());
  one.set(0);
  CHECK(mg_diameter_check(g, one, m).passed());
  // Non-perfect ambient group.
  auto s4 = symmetric_group(4);
  Bitset all(s4.group.order());
  for (Index i = 0; i < s4.group.order(); ++i) all.set(i);
  CHECK(mg_diameter_check(s4.group, all, all).status == Status::not_applicable);
}

TEST_CASE("width lower bound") {
  CHECK(width_lower_bound(P(5, 2, 3, 30)) == Rational{1, 1});
  CHECK(width_lower_bound(P(5, 2, 3, 1)) == Rational{1, 30});
  CHECK(width_lower_bound(P(5, 2, 3, 60)) == Rational{2, 1});
}

TEST_CASE("P_n semidirect law") {
  auto params = P(5, 3, 2, 1);
  Rng rng(5);
  auto vn = vn_space(params);
  auto ap = alternating_group(5).elements;
  std::vector<FqVector> nz;
  for (auto const& v : vn.elements())
    if (!v.is_zero()) nz.push_back(v);
  for (int i = 0; i < 50; ++i) {
    PnElement a{random_mn(params, nz, rng), random_gn(params, vn, ap, rng)};
    PnElement b{random_mn(params, nz, rng), random_gn(params, vn, ap, rng)};
    PnElement c{random_mn(params, nz, rng), random_gn(params, vn, ap, rng)};
    CHECK((a * b) * c == a * (b * c));
    // Conjugating x by g in P_n is the action.
    PnElement x{a.x, gn_identity(params)}, g{MnElement(params), b.g};
    CHECK(g.inverse() * x * g == PnElement{a.x.act(b.g), gn_identity(params)});
  }
}
