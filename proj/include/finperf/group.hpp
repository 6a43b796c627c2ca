#pragma once

// Black-box finite group engine.
//
// A ConcreteGroup is a fully enumerated finite group whose elements are the
// indices [0, order). Index 0 is always the identity. Multiplication is read
// from a full table when the group is small enough, and otherwise evaluated by
// following the Cayley-graph word of the right operand.

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "finperf/bitset.hpp"
#include "finperf/error.hpp"

namespace finperf {

using Index = std::uint32_t;

struct GroupOptions {
  // Maximum number of elements generate() may produce.
  std::size_t cap = 20000;
  // Groups up to this order get a full multiplication table.
  std::size_t table_limit = 6000;
};

class ConcreteGroup {
 public:
  // Trivial group.
  ConcreteGroup();

  // right_mul[a * num_gens + s] is the index of a * gen_s. parent/last_gen
  // describe a spanning tree rooted at 0 with index(parent[b]) < b and
  // b = parent[b] * gen_{last_gen[b]}.
  ConcreteGroup(std::vector<Index> right_mul, std::size_t num_gens, std::vector<Index> parent,
                std::vector<std::uint32_t> last_gen, std::vector<Index> gen_elements,
                std::size_t table_limit);

  std::size_t order() const noexcept { return order_; }
  Index identity() const noexcept { return 0; }

  Index mul(Index a, Index b) const noexcept {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order_ + b];
    return mul_by_word(a, b);
  }
  Index inv(Index a) const noexcept { return inverse_[a]; }
  // g^-1 a g
  Index conj(Index a, Index g) const noexcept { return mul(inv(g), mul(a, g)); }
  // a^-1 b^-1 a b
  Index comm(Index a, Index b) const noexcept { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  Index pow(Index a, std::uint64_t k) const noexcept;
  std::uint64_t element_order(Index a) const noexcept;

  std::span<Index const> generators() const noexcept { return gens_; }
  bool has_table() const noexcept { return !table_.empty(); }

  void set_labeler(std::function<std::string(Index)> labeler) { labeler_ = std::move(labeler); }
  std::string describe(Index a) const;

 private:
  Index mul_by_word(Index a, Index b) const noexcept;

  std::size_t order_ = 1;
  std::size_t num_gens_ = 0;
  std::vector<Index> right_mul_;
  std::vector<std::uint32_t> word_offsets_;
  std::vector<std::uint32_t> words_;
  std::vector<Index> table_;
  std::vector<Index> inverse_;
  std::vector<Index> gens_;
  std::function<std::string(Index)> labeler_;
};

// Result of enumerating a group given by generators over an element type.
template <class E, class Hash = std::hash<E>>
struct Enumerated {
  std::vector<E> elements;
  std::unordered_map<E, Index, Hash> index;
  ConcreteGroup group;

  Index index_of(E const& e) const {
    auto it = index.find(e);
    if (it == index.end()) throw ParameterError("element is not a member of the enumerated group");
    return it->second;
  }
  bool contains(E const& e) const { return index.count(e) != 0; }
};

// Breadth-first closure of gens under right multiplication. mul must be
// associative with identity as neutral element.
template <class E, class Hash = std::hash<E>, class Mul>
Enumerated<E, Hash> enumerate(E const& identity, std::vector<E> const& gens, Mul&& mul,
                              GroupOptions const& opts = {}) {
  Enumerated<E, Hash> out;
  std::size_t const k = gens.size();
  std::vector<Index> right;
  std::vector<Index> parent{0};
  std::vector<std::uint32_t> last_gen{0};
  out.elements.push_back(identity);
  out.index.emplace(identity, 0);
  for (std::size_t head = 0; head < out.elements.size(); ++head) {
    E const cur = out.elements[head];
    for (std::size_t s = 0; s < k; ++s) {
      E prod = mul(cur, gens[s]);
      auto [it, inserted] = out.index.try_emplace(prod, static_cast<Index>(out.elements.size()));
      if (inserted) {
        if (out.elements.size() + 1 > opts.cap) {
          throw ResourceError("group enumeration exceeded cap of " + std::to_string(opts.cap) +
                                  " elements",
                              out.elements.size());
        }
        out.elements.push_back(std::move(prod));
        parent.push_back(static_cast<Index>(head));
        last_gen.push_back(static_cast<std::uint32_t>(s));
      }
      right.push_back(it->second);
    }
  }
  std::vector<Index> gen_elements;
  gen_elements.reserve(k);
  for (std::size_t s = 0; s < k; ++s) gen_elements.push_back(right[s]);
  out.group = ConcreteGroup(std::move(right), k, std::move(parent), std::move(last_gen),
                            std::move(gen_elements), opts.table_limit);
  return out;
}

// Element contract for generate(): closed multiplication, equality, hashing.
template <class E>
concept GroupElement = std::equality_comparable<E> && std::copyable<E> && requires(E const& a) {
  { a * a } -> std::convertible_to<E>;
  { std::hash<E>{}(a) } -> std::convertible_to<std::size_t>;
};

template <GroupElement E>
Enumerated<E> generate(E const& identity, std::vector<E> const& gens,
                       GroupOptions const& opts = {}) {
  return enumerate<E>(identity, gens, [](E const& a, E const& b) { return a * b; }, opts);
}

// ---------------------------------------------------------------------------
// Subgroups

struct Subgroup {
  Bitset members;
  std::vector<Index> generators;

  std::size_t order() const noexcept { return members.count(); }
  bool contains(Index a) const noexcept { return members.test(a); }
  bool operator==(Subgroup const& other) const { return members == other.members; }
};

// A subgroup known to be normal in its parent.
using NormalSubgroup = Subgroup;

Subgroup trivial_subgroup(ConcreteGroup const& g);
Subgroup whole_group(ConcreteGroup const& g);

// Smallest subgroup containing gens. Keeps only generators that enlarged it.
Subgroup closure(ConcreteGroup const& g, std::span<Index const> gens);
// Adds one element to a subgroup, returning the enlarged closure.
void extend(ConcreteGroup const& g, Subgroup& h, Index x);
// Normal closure of seeds under conjugation by conj_gens (default: all of g).
Subgroup normal_closure(ConcreteGroup const& g, std::span<Index const> seeds);
Subgroup normal_closure(ConcreteGroup const& g, std::span<Index const> seeds,
                        std::span<Index const> conj_gens);
bool is_normal(ConcreteGroup const& g, Subgroup const& h);

struct ConjugacyClasses {
  std::vector<std::vector<Index>> classes;  // classes[0] == {identity}
  std::vector<Index> class_of;
};

ConjugacyClasses conjugacy_classes(ConcreteGroup const& g);
NormalSubgroup center(ConcreteGroup const& g);
NormalSubgroup derived_subgroup(ConcreteGroup const& g);
// Derived subgroup of h computed inside g.
Subgroup derived_subgroup(ConcreteGroup const& g, Subgroup const& h);

struct AnalysisOptions {
  std::size_t normal_cap = 20000;
  std::size_t width_cap = 20000;
};

// Every normal subgroup, sorted by order then membership.
std::vector<NormalSubgroup> normal_subgroups(ConcreteGroup const& g,
                                             AnalysisOptions const& opts = {});

// Union of conjugacy classes of all commutators [a, b].
Bitset commutator_set(ConcreteGroup const& g);

// Commutator length of every element; -1 marks elements outside g'.
std::vector<int> commutator_lengths(ConcreteGroup const& g, AnalysisOptions const& opts = {});
std::optional<int> commutator_length(ConcreteGroup const& g, Index a,
                                     AnalysisOptions const& opts = {});
// nullopt when g is not perfect.
std::optional<int> commutator_width(ConcreteGroup const& g, AnalysisOptions const& opts = {});

struct Quotient {
  ConcreteGroup group;
  std::vector<Index> coset_of;        // parent index -> quotient index
  std::vector<Index> representative;  // quotient index -> parent index
};

Quotient quotient_group(ConcreteGroup const& g, NormalSubgroup const& n);

struct InducedGroup {
  ConcreteGroup group;
  std::vector<Index> to_parent;
};

InducedGroup subgroup_as_group(ConcreteGroup const& g, Subgroup const& h);

ConcreteGroup direct_product(ConcreteGroup const& a, ConcreteGroup const& b,
                             GroupOptions const& opts = {});

// Invariant factors d_1 | d_2 | ... of g / g'. Empty for perfect groups.
std::vector<std::uint64_t> abelianization_invariants(ConcreteGroup const& g);

// ---------------------------------------------------------------------------
// Structure predicates. "Semisimple" means a direct product of non-abelian
// simple groups; the trivial group counts as the empty product.

bool is_abelian(ConcreteGroup const& g);
bool is_perfect(ConcreteGroup const& g);
bool is_solvable(ConcreteGroup const& g);
bool is_solvable(ConcreteGroup const& g, Subgroup const& h);
bool is_simple(ConcreteGroup const& g);
bool is_semisimple(ConcreteGroup const& g, AnalysisOptions const& opts = {});
bool is_quasisimple(ConcreteGroup const& g, AnalysisOptions const& opts = {});
bool is_almost_simple(ConcreteGroup const& g, AnalysisOptions const& opts = {});
bool is_central_product_of_quasisimples(ConcreteGroup const& g, AnalysisOptions const& opts = {});
bool is_central_ext_of_semisimple(ConcreteGroup const& g, AnalysisOptions const& opts = {});
NormalSubgroup cr_radical(ConcreteGroup const& g, AnalysisOptions const& opts = {});
NormalSubgroup solvable_radical(ConcreteGroup const& g, AnalysisOptions const& opts = {});

struct GroupAnalysis {
  std::size_t order = 0;
  bool abelian = false;
  bool perfect = false;
  bool solvable = false;
  bool simple = false;
  bool semisimple = false;
  bool quasisimple = false;
  bool almost_simple = false;
  bool central_product_of_quasisimples = false;
  bool central_ext_of_semisimple = false;
  std::size_t center_order = 0;
  std::size_t derived_order = 0;
  std::size_t cr_radical_order = 0;
  std::size_t solvable_radical_order = 0;
  std::size_t normal_subgroup_count = 0;
  std::vector<std::uint64_t> abelianization;
  std::optional<int> commutator_width;  // nullopt: not perfect or above width cap
  bool width_skipped = false;
};

GroupAnalysis analyze_group(ConcreteGroup const& g, AnalysisOptions const& opts = {});

// Word-metric diameter of the subgroup `target` with respect to the
// generating subset `gens_set` (positive words). nullopt when gens_set does
// not generate target.
std::optional<int> generated_diameter(ConcreteGroup const& g, Bitset const& target,
                                      Bitset const& gens_set);

}  // namespace finperf
