#include <random>
#include <set>

#include "doctest.h"
#include "finperf/arith.hpp"
#include "finperf/perms.hpp"

using namespace finperf;

namespace {

// Image-chasing oracle: apply b first, then a.
std::vector<unsigned> compose_images(std::vector<unsigned> const& a, std::vector<unsigned> const& b) {
  std::vector<unsigned> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i] - 1];
  return r;
}

std::vector<unsigned> invert_images(std::vector<unsigned> const& a) {
  std::vector<unsigned> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i] - 1] = static_cast<unsigned>(i + 1);
  return r;
}

}  // namespace

TEST_CASE("cycle parsing and printing") {
  auto p = Permutation::parse_cycles("(1 2 3)(4 5)");
  CHECK(p.degree() == 5);
  CHECK(p(1) == 2);
  CHECK(p(3) == 1);
  CHECK(p(5) == 4);
  CHECK(p.to_string() == "(1 2 3)(4 5)");
  CHECK(Permutation::parse_cycles("()", 4).is_identity());
  CHECK(Permutation(4).to_string() == "()");
  CHECK_FALSE(p.is_even());
  CHECK(Permutation::parse_cycles("(1 2 3)", 5).is_even());
}

TEST_CASE("malformed permutations are rejected") {
  CHECK_THROWS_AS(Permutation::parse_cycles("(1 2)(2 3)"), ParameterError);
  CHECK_THROWS_AS(Permutation::parse_cycles("(1 x)"), ParameterError);
  CHECK_THROWS_AS(Permutation::parse_cycles("(0 1)"), ParameterError);
  CHECK_THROWS_AS(Permutation::parse_cycles("(1 6)", 5), ParameterError);
  CHECK_THROWS_AS(Permutation::from_images({1, 1, 2}), ParameterError);
  CHECK_THROWS_AS(Permutation(3) * Permutation(4), ParameterError);
}

TEST_CASE("composition applies the right factor first") {
  auto a = Permutation::parse_cycles("(1 2)", 3);
  auto b = Permutation::parse_cycles("(2 3)", 3);
  // (a*b)(2) = a(b(2)) = a(3) = 3
  CHECK((a * b)(2) == 3);
  CHECK((a * b)(1) == 2);
}

TEST_CASE("commutator against image chasing") {
  std::vector<unsigned> a{2, 3, 4, 5, 1};  // (1 2 3 4 5)
  std::vector<unsigned> b{2, 1, 4, 3, 5};  // (1 2)(3 4)
  auto expect = compose_images(compose_images(invert_images(a), invert_images(b)), compose_images(a, b));
  auto got = commutator(Permutation::from_images(a), Permutation::from_images(b));
  CHECK(got == Permutation::from_images(expect));
  auto e = Permutation(5);
  auto pa = Permutation::from_images(a);
  CHECK(commutator(pa, e).is_identity());
  CHECK(commutator(pa, pa).is_identity());
}

TEST_CASE("alternating and symmetric group orders") {
  CHECK(alternating_group(5).elements.size() == 60);
  CHECK(alternating_group(3).elements.size() == 3);
  CHECK(alternating_group(7).elements.size() == 2520);
  CHECK(alternating_group(1).elements.size() == 1);
  CHECK(symmetric_group(5).elements.size() == 120);
  for (auto const& s : alternating_group(6).elements) CHECK(s.is_even());
  CHECK_THROWS_AS(alternating_group(11), ResourceError);
  CHECK_THROWS_AS(alternating_group(8, PermOptions{1000}), ResourceError);
}

TEST_CASE("two-element generating sets reach all of A_n") {
  for (std::size_t n : {3u, 4u, 5u, 6u, 7u}) {
    auto gens = alternating_generators(n);
    auto g = generate(Permutation(n), gens);
    CHECK(g.elements.size() == factorial(static_cast<unsigned>(n)) / 2);
  }
}

TEST_CASE("group axioms on sampled triples") {
  auto a7 = alternating_group(7);
  std::mt19937_64 rng(7);
  auto pick = [&] { return a7.elements[rng() % a7.elements.size()]; };
  for (int i = 0; i < 300; ++i) {
    auto a = pick(), b = pick(), c = pick();
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * a.inverse()).is_identity());
    CHECK((a.inverse() * a).is_identity());
    CHECK(commutator(a, b).is_even());
  }
}

TEST_CASE("every element of A5 is a commutator") {
  auto a5 = alternating_group(5);
  std::set<Permutation> comms;
  for (auto const& a : a5.elements)
    for (auto const& b : a5.elements) comms.insert(commutator(a, b));
  CHECK(comms.size() == 60);
}

TEST_CASE("A5 fixed point lemma") {
  auto r = verify_a5_fixed_point_lemma();
  CHECK(r.pairs_examined == 3600);
  CHECK(r.solutions > 0);
  CHECK(r.solutions == r.solution_pairs.size());
  auto target = Permutation::from_images({2, 1, 4, 3, 5});
  CHECK(commutator(Permutation::parse_cycles("(1 2 3)", 5), Permutation::parse_cycles("(1 3)(2 4)", 5)) ==
        target);
  CHECK(commutator(Permutation(5), Permutation(5)) != target);
}
