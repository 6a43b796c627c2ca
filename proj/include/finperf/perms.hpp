#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finperf/group.hpp"

namespace finperf {

// A permutation of {1..degree}, stored in one-line notation with 0-based
// images. Composition is (a * b)(i) = a(b(i)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);
  // images are 1-based: images[i-1] = sigma(i).
  static Permutation from_images(std::vector<unsigned> const& images);
  // Disjoint cycle notation such as "(1 2 3)(4 5)"; "()" is the identity.
  // degree 0 infers the degree from the largest point mentioned.
  static Permutation parse_cycles(std::string_view text, std::size_t degree = 0);
  // The cycle (1 2 ... degree).
  static Permutation long_cycle(std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  // 1-based application.
  unsigned operator()(unsigned point) const { return images_[point - 1] + 1u; }
  // 0-based application.
  std::uint8_t image0(std::size_t i) const noexcept { return images_[i]; }

  Permutation operator*(Permutation const& other) const;
  Permutation inverse() const;
  bool is_identity() const noexcept;
  bool is_even() const;
  std::vector<std::vector<unsigned>> cycles() const;  // non-trivial cycles, 1-based
  std::string to_string() const;

  auto operator<=>(Permutation const&) const = default;
  bool operator==(Permutation const&) const = default;

  std::vector<std::uint8_t> const& images0() const noexcept { return images_; }

 private:
  std::vector<std::uint8_t> images_;
};

Permutation commutator(Permutation const& a, Permutation const& b);

struct PermOptions {
  // Enumeration cap on the group order.
  std::size_t cap = 3628800;  // 10!
};

// Two-element generating set of A_degree: (1 2 3) with (1 2 .. n) for odd n,
// (2 3 .. n) for even n. Empty below degree 3.
std::vector<Permutation> alternating_generators(std::size_t degree);

Enumerated<Permutation> alternating_group(std::size_t degree, PermOptions const& opts = {});
Enumerated<Permutation> symmetric_group(std::size_t degree, PermOptions const& opts = {});

struct A5LemmaReport {
  std::size_t pairs_examined = 0;
  std::size_t solutions = 0;
  std::vector<std::pair<Permutation, Permutation>> solution_pairs;
};

// Checks that [s1, s2] = (12)(34) in A_5 forces s1(5) = s2(5) = 5 over all
// ordered pairs. Throws VerificationFailure with the offending pair otherwise.
A5LemmaReport verify_a5_fixed_point_lemma();

}  // namespace finperf

template <>
struct std::hash<finperf::Permutation> {
  std::size_t operator()(finperf::Permutation const& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.images0()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};
