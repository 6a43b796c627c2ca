#include "finperf/catalog.hpp"

#include <cctype>
#include <cmath>
#include <memory>

#include "finperf/constructions.hpp"
#include "finperf/ffla.hpp"
#include "finperf/perms.hpp"

namespace finperf {

namespace {

struct MatPair {
  FqMatrix a, b;
  MatPair operator*(MatPair const& o) const { return {a * o.a, b * o.b}; }
  bool operator==(MatPair const&) const = default;
};

struct MatPairHash {
  std::size_t operator()(MatPair const& m) const noexcept {
    return std::hash<FqMatrix>{}(m.a) * 31 + std::hash<FqMatrix>{}(m.b);
  }
};

template <class E, class H>
ConcreteGroup labeled(Enumerated<E, H> en, std::function<std::string(E const&)> show) {
  auto elems = std::make_shared<std::vector<E> const>(std::move(en.elements));
  en.group.set_labeler([elems, show](Index i) { return show((*elems)[i]); });
  return std::move(en.group);
}

ConcreteGroup matrix_group(std::vector<FqMatrix> const& gens, GroupOptions const& opts) {
  if (gens.empty()) throw ParameterError("matrix group needs at least one generator");
  FqMatrix const id(gens[0].q(), gens[0].dim());
  for (auto const& g : gens) {
    if (g.dim() != id.dim() || g.q() != id.q()) throw ParameterError("matrix generators of different shapes");
    if (g.determinant() == 0) throw ParameterError("singular matrix generator " + g.to_string());
  }
  return labeled<FqMatrix, std::hash<FqMatrix>>(generate(id, gens, opts), [](FqMatrix const& m) { return m.to_string(); });
}

std::vector<FqMatrix> sl25_generators() { return {FqMatrix(5, 2, {1, 1, 0, 1}), FqMatrix(5, 2, {0, -1, 1, 0})}; }

// Recursive-descent helpers over the spec text.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ == text_.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::int64_t integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) neg = text_[pos_++] == '-';
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected an integer");
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > (std::int64_t{1} << 40)) fail("integer out of range");
    }
    return neg ? -v : v;
  }
  // Text up to (not including) any of the stop characters.
  std::string_view until(std::string_view stops) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && stops.find(text_[pos_]) == std::string_view::npos) ++pos_;
    return text_.substr(start, pos_ - start);
  }
  [[noreturn]] void fail(std::string const& what) const {
    throw ParameterError("group spec: " + what + " at position " + std::to_string(pos_) + " in '" +
                         std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

CatalogGroup parse_perm(Cursor& cur, GroupOptions const& opts) {
  cur.expect('{');
  std::vector<std::string> texts;
  for (;;) {
    auto piece = cur.until(";}");
    texts.emplace_back(piece);
    if (cur.accept('}')) break;
    cur.expect(';');
  }
  std::size_t degree = 1;
  for (auto const& t : texts) degree = std::max(degree, Permutation::parse_cycles(t).degree());
  if (degree > 20) cur.fail("permutation degree above 20");
  std::vector<Permutation> gens;
  for (auto const& t : texts) gens.push_back(Permutation::parse_cycles(t, degree));
  auto group = labeled<Permutation, std::hash<Permutation>>(generate(Permutation(degree), gens, opts),
                                                            [](Permutation const& p) { return p.to_string(); });
  return {"perm", std::move(group)};
}

CatalogGroup parse_mat(Cursor& cur, GroupOptions const& opts) {
  cur.expect('(');
  auto q = cur.integer();
  cur.expect(')');
  if (q < 2 || q > 251) cur.fail("field size out of range");
  require_field(static_cast<std::uint32_t>(q));
  cur.expect('{');
  std::vector<FqMatrix> gens;
  for (;;) {
    std::vector<std::int64_t> entries{cur.integer()};
    while (cur.accept(',')) entries.push_back(cur.integer());
    auto dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
    if (dim * dim != entries.size()) cur.fail("matrix entry count is not a square");
    if (dim > 8) cur.fail("matrix dimension above 8");
    gens.emplace_back(static_cast<std::uint32_t>(q), dim, entries);
    if (cur.accept('}')) break;
    cur.expect(';');
  }
  return {"mat", matrix_group(gens, opts)};
}

}  // namespace

CatalogGroup catalog_a5(GroupOptions const& opts) { return {"a5", alternating_group(5, PermOptions{opts.cap}).group}; }

CatalogGroup catalog_s5(GroupOptions const& opts) { return {"s5", symmetric_group(5, PermOptions{opts.cap}).group}; }

CatalogGroup catalog_sl25(GroupOptions const& opts) { return {"sl2(5)", matrix_group(sl25_generators(), opts)}; }

CatalogGroup catalog_a5xa5(GroupOptions const& opts) {
  auto a5 = alternating_group(5, PermOptions{opts.cap}).group;
  return {"a5xa5", direct_product(a5, a5, opts)};
}

CatalogGroup catalog_subdirect_sl25(GroupOptions const& opts) {
  auto const g = sl25_generators();
  FqMatrix const id(5, 2);
  std::vector<MatPair> gens{{g[0], g[0]}, {g[1], g[1]}, {id, -id}};
  auto en = enumerate<MatPair, MatPairHash>(MatPair{id, id}, gens,
                                            [](MatPair const& a, MatPair const& b) { return a * b; }, opts);
  return {"subdirect-sl25", labeled<MatPair, MatPairHash>(std::move(en), [](MatPair const& m) {
            return "(" + m.a.to_string() + ", " + m.b.to_string() + ")";
          })};
}

CatalogGroup parse_group_spec(std::string_view spec, GroupOptions const& opts) {
  Cursor cur(spec);
  cur.skip_ws();
  std::string head;
  for (char c : cur.until("({ \t")) head.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  CatalogGroup out;
  if (head == "a5") {
    out = catalog_a5(opts);
  } else if (head == "s5") {
    out = catalog_s5(opts);
  } else if (head == "sl2") {
    cur.expect('(');
    if (cur.integer() != 5) cur.fail("only sl2(5) is in the catalog");
    cur.expect(')');
    out = catalog_sl25(opts);
  } else if (head == "subdirect-sl25") {
    out = catalog_subdirect_sl25(opts);
  } else if (head == "gn") {
    cur.expect('(');
    Params params;
    params.p = static_cast<unsigned>(cur.integer());
    cur.expect(',');
    params.q = static_cast<std::uint32_t>(cur.integer());
    cur.expect(',');
    params.n = static_cast<std::size_t>(cur.integer());
    cur.expect(')');
    // m plays no role in G_n.
    params.m = 1;
    params.validate();
    auto en = build_Gn(params, opts);
    out = {"gn", std::move(en.group)};
  } else if (head == "perm") {
    out = parse_perm(cur, opts);
  } else if (head == "mat") {
    out = parse_mat(cur, opts);
  } else {
    cur.fail("unknown group '" + head + "'");
  }
  if (!cur.done()) cur.fail("trailing text");
  out.name = std::string(spec);
  return out;
}

}  // namespace finperf
