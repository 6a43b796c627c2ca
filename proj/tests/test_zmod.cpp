#include <random>
#include <set>

#include "doctest.h"
#include "finperf/error.hpp"
#include "finperf/zmod.hpp"

using namespace finperf;

namespace {

// Brute-force span: closure of {0} under adding generators.
std::set<ZmodRow> span_oracle(std::vector<ZmodRow> const& gens, std::uint32_t m, std::size_t n) {
  std::set<ZmodRow> seen{ZmodRow(n, 0)};
  std::vector<ZmodRow> queue{ZmodRow(n, 0)};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (auto const& g : gens) {
      ZmodRow s(n);
      for (std::size_t k = 0; k < n; ++k) s[k] = (queue[h][k] + g[k]) % m;
      if (seen.insert(s).second) queue.push_back(s);
    }
  return seen;
}

}  // namespace

TEST_CASE("row span membership matches brute force") {
  std::mt19937_64 rng(1);
  for (std::uint32_t m : {2u, 4u, 6u, 9u, 12u}) {
    std::size_t const n = 3;
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<ZmodRow> gens;
      for (int k = 0; k < static_cast<int>(rng() % 4); ++k) {
        ZmodRow r(n);
        for (auto& x : r) x = static_cast<std::uint32_t>(rng() % m);
        gens.push_back(r);
      }
      ZmodRowSpan span(m, n);
      span.assign(gens);
      auto oracle = span_oracle(gens, m, n);
      CHECK(static_cast<std::size_t>(span.size()) == oracle.size());
      ZmodRow x(n, 0);
      for (std::uint32_t a = 0; a < m; ++a)
        for (std::uint32_t b = 0; b < m; ++b)
          for (std::uint32_t c = 0; c < m; ++c) {
            x = {a, b, c};
            CHECK(span.contains(x) == (oracle.count(x) == 1));
          }
    }
  }
}

TEST_CASE("row span edge cases") {
  ZmodRowSpan s(6, 2);
  s.assign({});
  CHECK(s.contains({0, 0}));
  CHECK_FALSE(s.contains({1, 0}));
  // 2 and 3 together generate the unit.
  s.assign({{2, 0}, {3, 0}});
  CHECK(s.contains({1, 0}));
  // (2,1) has annihilator multiple 3*(2,1) = (0,3).
  s.assign({{2, 1}});
  CHECK(s.contains({0, 3}));
  CHECK_FALSE(s.contains({0, 1}));
  CHECK_THROWS_AS(s.contains({1}), ParameterError);
  CHECK_THROWS_AS(ZmodRowSpan(0, 1), ParameterError);
}

TEST_CASE("determinant mod m") {
  CHECK(determinant_mod({{2, 1}, {1, 1}}, 7) == 1);
  CHECK(determinant_mod({{0, 1}, {1, 0}}, 5) == 4);
  CHECK(determinant_mod({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}, 100) == 97);  // -3
  CHECK(determinant_mod({{1, 2}, {2, 4}}, 3) == 0);
  CHECK(determinant_mod({}, 5) == 1);
}
