#include "finperf/group.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace finperf {

ConcreteGroup::ConcreteGroup()
    : order_(1), num_gens_(0), word_offsets_{0, 0}, table_{0}, inverse_{0} {}

ConcreteGroup::ConcreteGroup(std::vector<Index> right_mul, std::size_t num_gens,
                             std::vector<Index> parent, std::vector<std::uint32_t> last_gen,
                             std::vector<Index> gen_elements, std::size_t table_limit)
    : order_(parent.size()),
      num_gens_(num_gens),
      right_mul_(std::move(right_mul)),
      gens_(std::move(gen_elements)) {
  std::size_t const n = order_;

  // Cayley-graph words, flattened: word(b) = word(parent[b]) + last_gen[b].
  word_offsets_.assign(n + 1, 0);
  for (std::size_t b = 1; b < n; ++b) {
    std::size_t len = word_offsets_[parent[b] + 1] - word_offsets_[parent[b]] + 1;
    word_offsets_[b + 1] = static_cast<std::uint32_t>(word_offsets_[b] + len);
  }
  words_.resize(word_offsets_[n]);
  for (std::size_t b = 1; b < n; ++b) {
    auto src = word_offsets_[parent[b]];
    auto len = word_offsets_[parent[b] + 1] - src;
    std::copy_n(words_.begin() + src, len, words_.begin() + word_offsets_[b]);
    words_[word_offsets_[b] + len] = last_gen[b];
  }

  if (n <= table_limit) {
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      Index* row = table_.data() + a * n;
      row[0] = static_cast<Index>(a);
      for (std::size_t b = 1; b < n; ++b) row[b] = right_mul_[row[parent[b]] * num_gens_ + last_gen[b]];
    }
  }

  std::vector<Index> gen_inverse(num_gens_, 0);
  for (std::size_t s = 0; s < num_gens_; ++s) {
    Index prev = 0;
    Index x = gens_[s];
    while (x != 0) {
      prev = x;
      x = right_mul_[x * num_gens_ + s];
    }
    gen_inverse[s] = prev;
  }
  inverse_.assign(n, 0);
  for (std::size_t b = 1; b < n; ++b)
    inverse_[b] = mul(gen_inverse[last_gen[b]], inverse_[parent[b]]);
}

Index ConcreteGroup::mul_by_word(Index a, Index b) const noexcept {
  for (auto i = word_offsets_[b]; i < word_offsets_[b + 1]; ++i)
    a = right_mul_[static_cast<std::size_t>(a) * num_gens_ + words_[i]];
  return a;
}

Index ConcreteGroup::pow(Index a, std::uint64_t k) const noexcept {
  Index result = 0;
  Index base = a;
  while (k) {
    if (k & 1u) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::uint64_t ConcreteGroup::element_order(Index a) const noexcept {
  std::uint64_t k = 1;
  for (Index x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::string ConcreteGroup::describe(Index a) const {
  if (labeler_) return labeler_(a);
  return "#" + std::to_string(a);
}

// ---------------------------------------------------------------------------

Subgroup trivial_subgroup(ConcreteGroup const& g) {
  Subgroup h{Bitset(g.order()), {}};
  h.members.set(0);
  return h;
}

Subgroup whole_group(ConcreteGroup const& g) {
  Subgroup h = closure(g, g.generators());
  return h;
}

void extend(ConcreteGroup const& g, Subgroup& h, Index x) {
  if (h.members.test(x)) return;
  h.generators.push_back(x);
  std::vector<Index> queue = h.members.indices();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Index y = queue[head];
    for (Index s : h.generators) {
      Index z = g.mul(y, s);
      if (!h.members.test(z)) {
        h.members.set(z);
        queue.push_back(z);
      }
    }
  }
}

Subgroup closure(ConcreteGroup const& g, std::span<Index const> gens) {
  Subgroup h = trivial_subgroup(g);
  for (Index x : gens) extend(g, h, x);
  return h;
}

Subgroup normal_closure(ConcreteGroup const& g, std::span<Index const> seeds,
                        std::span<Index const> conj_gens) {
  Subgroup h = closure(g, seeds);
  for (std::size_t i = 0; i < h.generators.size(); ++i) {
    for (Index c : conj_gens) {
      Index y = g.conj(h.generators[i], c);
      if (!h.members.test(y)) extend(g, h, y);
    }
  }
  return h;
}

Subgroup normal_closure(ConcreteGroup const& g, std::span<Index const> seeds) {
  return normal_closure(g, seeds, g.generators());
}

bool is_normal(ConcreteGroup const& g, Subgroup const& h) {
  for (Index x : h.generators)
    for (Index c : g.generators())
      if (!h.members.test(g.conj(x, c))) return false;
  return true;
}

ConjugacyClasses conjugacy_classes(ConcreteGroup const& g) {
  constexpr Index kUnset = ~Index{0};
  ConjugacyClasses out;
  out.class_of.assign(g.order(), kUnset);
  for (Index x = 0; x < g.order(); ++x) {
    if (out.class_of[x] != kUnset) continue;
    auto id = static_cast<Index>(out.classes.size());
    std::vector<Index> cls{x};
    out.class_of[x] = id;
    for (std::size_t head = 0; head < cls.size(); ++head) {
      for (Index s : g.generators()) {
        Index y = g.conj(cls[head], s);
        if (out.class_of[y] == kUnset) {
          out.class_of[y] = id;
          cls.push_back(y);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

NormalSubgroup center(ConcreteGroup const& g) {
  std::vector<Index> central;
  for (Index x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Index s : g.generators()) {
      if (g.mul(x, s) != g.mul(s, x)) {
        ok = false;
        break;
      }
    }
    if (ok) central.push_back(x);
  }
  NormalSubgroup z = closure(g, central);
  return z;
}

namespace {

std::vector<Index> pairwise_commutators(ConcreteGroup const& g, std::span<Index const> gens) {
  std::vector<Index> out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Index c = g.comm(gens[i], gens[j]);
      if (c != 0) out.push_back(c);
    }
  return out;
}

}  // namespace

NormalSubgroup derived_subgroup(ConcreteGroup const& g) {
  auto seeds = pairwise_commutators(g, g.generators());
  return normal_closure(g, seeds, g.generators());
}

Subgroup derived_subgroup(ConcreteGroup const& g, Subgroup const& h) {
  auto seeds = pairwise_commutators(g, h.generators);
  return normal_closure(g, seeds, h.generators);
}

std::vector<NormalSubgroup> normal_subgroups(ConcreteGroup const& g, AnalysisOptions const& opts) {
  if (g.order() > opts.normal_cap) {
    throw ResourceError("normal subgroup enumeration above cap of " +
                            std::to_string(opts.normal_cap),
                        0);
  }
  auto classes = conjugacy_classes(g);

  std::unordered_set<Bitset, BitsetHash> seen;
  std::vector<NormalSubgroup> class_closures;
  for (std::size_t c = 1; c < classes.classes.size(); ++c) {
    Index rep = classes.classes[c].front();
    auto n = normal_closure(g, std::span<Index const>(&rep, 1));
    if (seen.insert(n.members).second) class_closures.push_back(std::move(n));
  }

  seen.clear();
  std::vector<NormalSubgroup> lattice{trivial_subgroup(g)};
  seen.insert(lattice.front().members);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    for (auto const& k : class_closures) {
      if (k.members.is_subset_of(lattice[i].members)) continue;
      NormalSubgroup join = lattice[i];
      for (Index x : k.generators) extend(g, join, x);
      if (seen.insert(join.members).second) lattice.push_back(std::move(join));
    }
  }

  std::vector<std::pair<std::vector<Index>, std::size_t>> keys;
  keys.reserve(lattice.size());
  for (std::size_t i = 0; i < lattice.size(); ++i) keys.emplace_back(lattice[i].members.indices(), i);
  std::sort(keys.begin(), keys.end(), [](auto const& a, auto const& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<NormalSubgroup> sorted;
  sorted.reserve(lattice.size());
  for (auto const& key : keys) sorted.push_back(std::move(lattice[key.second]));
  return sorted;
}

Bitset commutator_set(ConcreteGroup const& g) {
  auto classes = conjugacy_classes(g);
  Bitset hit(g.order());
  for (auto const& cls : classes.classes) {
    Index rep = cls.front();
    for (Index h = 0; h < g.order(); ++h) hit.set(g.comm(rep, h));
  }
  // [r, h]^k = [r^k, h^k], so the commutator set is a union of classes.
  Bitset out(g.order());
  for (auto const& cls : classes.classes) {
    bool any = std::any_of(cls.begin(), cls.end(), [&](Index x) { return hit.test(x); });
    if (any)
      for (Index x : cls) out.set(x);
  }
  return out;
}

std::vector<int> commutator_lengths(ConcreteGroup const& g, AnalysisOptions const& opts) {
  if (g.order() > opts.width_cap) {
    throw ResourceError("commutator-length search above cap of " + std::to_string(opts.width_cap),
                        0);
  }
  auto comms = commutator_set(g).indices();
  std::vector<int> level(g.order(), -1);
  level[0] = 0;
  std::vector<Index> frontier{0};
  int k = 0;
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (Index s : frontier) {
      for (Index c : comms) {
        Index y = g.mul(s, c);
        if (level[y] < 0) {
          level[y] = k + 1;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
    ++k;
  }
  return level;
}

std::optional<int> commutator_length(ConcreteGroup const& g, Index a, AnalysisOptions const& opts) {
  if (a == 0) return 0;
  int l = commutator_lengths(g, opts)[a];
  if (l < 0) return std::nullopt;
  return l;
}

std::optional<int> commutator_width(ConcreteGroup const& g, AnalysisOptions const& opts) {
  auto levels = commutator_lengths(g, opts);
  int width = 0;
  for (int l : levels) {
    if (l < 0) return std::nullopt;
    width = std::max(width, l);
  }
  return width;
}

Quotient quotient_group(ConcreteGroup const& g, NormalSubgroup const& n) {
  if (!is_normal(g, n)) throw ParameterError("quotient by a subgroup that is not normal");
  constexpr Index kUnset = ~Index{0};
  std::vector<Index> coset_id(g.order(), kUnset);
  std::vector<Index> rep;
  auto members = n.members.indices();
  for (Index x = 0; x < g.order(); ++x) {
    if (coset_id[x] != kUnset) continue;
    auto id = static_cast<Index>(rep.size());
    rep.push_back(x);
    for (Index m : members) coset_id[g.mul(x, m)] = id;
  }
  std::vector<Index> gens;
  for (Index s : g.generators()) gens.push_back(coset_id[s]);
  auto en = enumerate<Index>(
      coset_id[0], gens,
      [&](Index a, Index b) { return coset_id[g.mul(rep[a], rep[b])]; },
      GroupOptions{g.order(), GroupOptions{}.table_limit});

  Quotient out;
  std::vector<Index> id_to_q(rep.size(), 0);
  out.representative.resize(en.elements.size());
  for (Index q = 0; q < en.elements.size(); ++q) {
    id_to_q[en.elements[q]] = q;
    out.representative[q] = rep[en.elements[q]];
  }
  out.coset_of.resize(g.order());
  for (Index x = 0; x < g.order(); ++x) out.coset_of[x] = id_to_q[coset_id[x]];
  out.group = std::move(en.group);
  return out;
}

InducedGroup subgroup_as_group(ConcreteGroup const& g, Subgroup const& h) {
  auto en = enumerate<Index>(0, h.generators, [&](Index a, Index b) { return g.mul(a, b); },
                             GroupOptions{g.order(), GroupOptions{}.table_limit});
  InducedGroup out;
  out.to_parent = std::move(en.elements);
  out.group = std::move(en.group);
  return out;
}

namespace {

struct PairHash {
  std::size_t operator()(std::pair<Index, Index> const& p) const noexcept {
    return (static_cast<std::size_t>(p.first) << 32) ^ p.second;
  }
};

}  // namespace

ConcreteGroup direct_product(ConcreteGroup const& a, ConcreteGroup const& b,
                             GroupOptions const& opts) {
  using P = std::pair<Index, Index>;
  std::vector<P> gens;
  for (Index s : a.generators()) gens.emplace_back(s, 0);
  for (Index s : b.generators()) gens.emplace_back(0, s);
  auto en = enumerate<P, PairHash>(
      P{0, 0}, gens, [&](P const& x, P const& y) { return P{a.mul(x.first, y.first), b.mul(x.second, y.second)}; },
      opts);
  return std::move(en.group);
}

std::vector<std::uint64_t> abelianization_invariants(ConcreteGroup const& g) {
  ConcreteGroup ab = quotient_group(g, derived_subgroup(g)).group;
  std::vector<std::uint64_t> factors;
  while (ab.order() > 1) {
    Index best = 0;
    std::uint64_t best_order = 1;
    for (Index x = 1; x < ab.order(); ++x) {
      auto o = ab.element_order(x);
      if (o > best_order) {
        best_order = o;
        best = x;
      }
    }
    factors.push_back(best_order);
    // A cyclic subgroup of maximal order is a direct factor of an abelian group.
    auto cyc = closure(ab, std::span<Index const>(&best, 1));
    ab = quotient_group(ab, cyc).group;
  }
  std::reverse(factors.begin(), factors.end());
  return factors;
}

// ---------------------------------------------------------------------------

bool is_abelian(ConcreteGroup const& g) {
  auto gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) return false;
  return true;
}

bool is_perfect(ConcreteGroup const& g) { return derived_subgroup(g).order() == g.order(); }

bool is_solvable(ConcreteGroup const& g, Subgroup const& h) {
  Subgroup cur = h;
  while (cur.order() > 1) {
    Subgroup next = derived_subgroup(g, cur);
    if (next.order() == cur.order()) return false;
    cur = std::move(next);
  }
  return true;
}

bool is_solvable(ConcreteGroup const& g) { return is_solvable(g, whole_group(g)); }

bool is_simple(ConcreteGroup const& g) {
  if (g.order() == 1) return false;
  auto classes = conjugacy_classes(g);
  for (std::size_t c = 1; c < classes.classes.size(); ++c) {
    Index rep = classes.classes[c].front();
    if (normal_closure(g, std::span<Index const>(&rep, 1)).order() != g.order()) return false;
  }
  return true;
}

namespace {

bool subgroups_commute(ConcreteGroup const& g, Subgroup const& a, Subgroup const& b) {
  for (Index x : a.generators)
    for (Index y : b.generators)
      if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

bool nonabelian_simple(ConcreteGroup const& g, Subgroup const& h) {
  auto induced = subgroup_as_group(g, h);
  return !is_abelian(induced.group) && is_simple(induced.group);
}

bool is_semisimple_from(ConcreteGroup const& g, std::vector<NormalSubgroup> const& normals) {
  if (g.order() == 1) return true;
  if (is_abelian(g)) return false;
  std::vector<NormalSubgroup const*> minimal;
  for (auto const& n : normals) {
    if (n.order() == 1) continue;
    bool is_min = true;
    for (auto const& m : normals) {
      if (m.order() == 1 || m.order() >= n.order()) continue;
      if (m.members.is_subset_of(n.members)) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(&n);
  }
  std::size_t product = 1;
  for (auto const* m : minimal) {
    if (!nonabelian_simple(g, *m)) return false;
    product *= m->order();
    if (product > g.order()) return false;
  }
  if (product != g.order()) return false;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    for (std::size_t j = i + 1; j < minimal.size(); ++j) {
      if ((minimal[i]->members & minimal[j]->members).count() != 1) return false;
      if (!subgroups_commute(g, *minimal[i], *minimal[j])) return false;
    }
  }
  return true;
}

template <class Pred>
NormalSubgroup unique_maximal(std::vector<NormalSubgroup> const& normals, Pred&& pred,
                              char const* what) {
  std::vector<NormalSubgroup const*> passing;
  for (auto const& n : normals)
    if (pred(n)) passing.push_back(&n);
  std::vector<NormalSubgroup const*> maximal;
  for (auto const* n : passing) {
    bool is_max = true;
    for (auto const* m : passing) {
      if (m != n && m->order() > n->order() && n->members.is_subset_of(m->members)) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(n);
  }
  if (maximal.size() != 1) {
    throw VerificationFailure(std::string("no unique maximal ") + what + " normal subgroup",
                              std::to_string(maximal.size()) + " maximal candidates");
  }
  return *maximal.front();
}

NormalSubgroup cr_radical_from(ConcreteGroup const& g, std::vector<NormalSubgroup> const& normals,
                               AnalysisOptions const& opts) {
  return unique_maximal(
      normals,
      [&](NormalSubgroup const& n) {
        if (n.order() == 1) return true;
        auto induced = subgroup_as_group(g, n);
        return is_semisimple(induced.group, opts);
      },
      "semisimple");
}

NormalSubgroup solvable_radical_from(ConcreteGroup const& g,
                                     std::vector<NormalSubgroup> const& normals) {
  return unique_maximal(
      normals, [&](NormalSubgroup const& n) { return is_solvable(g, n); }, "solvable");
}

ConcreteGroup central_quotient(ConcreteGroup const& g) {
  return quotient_group(g, center(g)).group;
}

}  // namespace

bool is_semisimple(ConcreteGroup const& g, AnalysisOptions const& opts) {
  if (g.order() == 1) return true;
  if (is_abelian(g)) return false;
  return is_semisimple_from(g, normal_subgroups(g, opts));
}

bool is_quasisimple(ConcreteGroup const& g, AnalysisOptions const&) {
  if (!is_perfect(g)) return false;
  auto q = central_quotient(g);
  return q.order() > 1 && !is_abelian(q) && is_simple(q);
}

bool is_central_product_of_quasisimples(ConcreteGroup const& g, AnalysisOptions const& opts) {
  return is_perfect(g) && is_semisimple(central_quotient(g), opts);
}

bool is_central_ext_of_semisimple(ConcreteGroup const& g, AnalysisOptions const& opts) {
  return is_semisimple(central_quotient(g), opts);
}

NormalSubgroup cr_radical(ConcreteGroup const& g, AnalysisOptions const& opts) {
  return cr_radical_from(g, normal_subgroups(g, opts), opts);
}

NormalSubgroup solvable_radical(ConcreteGroup const& g, AnalysisOptions const& opts) {
  return solvable_radical_from(g, normal_subgroups(g, opts));
}

bool is_almost_simple(ConcreteGroup const& g, AnalysisOptions const& opts) {
  auto normals = normal_subgroups(g, opts);
  if (solvable_radical_from(g, normals).order() != 1) return false;
  auto cr = cr_radical_from(g, normals, opts);
  return cr.order() > 1 && nonabelian_simple(g, cr);
}

GroupAnalysis analyze_group(ConcreteGroup const& g, AnalysisOptions const& opts) {
  GroupAnalysis a;
  a.order = g.order();
  a.abelian = is_abelian(g);
  auto derived = derived_subgroup(g);
  a.derived_order = derived.order();
  a.perfect = derived.order() == g.order();
  a.solvable = is_solvable(g);
  a.simple = is_simple(g);

  auto normals = normal_subgroups(g, opts);
  a.normal_subgroup_count = normals.size();
  a.semisimple = is_semisimple_from(g, normals);

  auto z = center(g);
  a.center_order = z.order();
  auto q = quotient_group(g, z).group;
  bool q_semisimple = is_semisimple(q, opts);
  a.central_ext_of_semisimple = q_semisimple;
  a.central_product_of_quasisimples = a.perfect && q_semisimple;
  a.quasisimple = a.perfect && q.order() > 1 && !is_abelian(q) && is_simple(q);

  auto cr = cr_radical_from(g, normals, opts);
  auto sr = solvable_radical_from(g, normals);
  a.cr_radical_order = cr.order();
  a.solvable_radical_order = sr.order();
  a.almost_simple = sr.order() == 1 && cr.order() > 1 && nonabelian_simple(g, cr);

  a.abelianization = abelianization_invariants(g);
  if (a.perfect) {
    if (g.order() <= opts.width_cap)
      a.commutator_width = commutator_width(g, opts);
    else
      a.width_skipped = true;
  }
  return a;
}

std::optional<int> generated_diameter(ConcreteGroup const& g, Bitset const& target,
                                      Bitset const& gens_set) {
  auto gens = gens_set.indices();
  std::vector<int> level(g.order(), -1);
  level[0] = 0;
  std::vector<Index> frontier{0};
  std::size_t reached = 1;
  int depth = 0;
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (Index s : frontier) {
      for (Index c : gens) {
        Index y = g.mul(s, c);
        if (level[y] < 0) {
          level[y] = depth + 1;
          next.push_back(y);
          ++reached;
        }
      }
    }
    if (!next.empty()) ++depth;
    frontier = std::move(next);
  }
  if (reached != target.count()) return std::nullopt;
  for (Index x = 0; x < g.order(); ++x)
    if (level[x] >= 0 && !target.test(x)) return std::nullopt;
  return depth;
}

}  // namespace finperf
