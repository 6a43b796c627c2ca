#include "finperf/perms.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <numeric>
#include <sstream>

#include "finperf/arith.hpp"

namespace finperf {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  if (degree > 255) throw ParameterError("permutation degree above 255");
  std::iota(images_.begin(), images_.end(), std::uint8_t{0});
}

Permutation Permutation::from_images(std::vector<unsigned> const& images) {
  Permutation p(images.size());
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    unsigned x = images[i];
    if (x < 1 || x > images.size() || seen[x - 1])
      throw ParameterError("images do not form a bijection");
    seen[x - 1] = true;
    p.images_[i] = static_cast<std::uint8_t>(x - 1);
  }
  return p;
}

Permutation Permutation::parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<unsigned>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParameterError("expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<unsigned> cycle;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParameterError("malformed cycle notation: " + std::string(text));
      unsigned v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned>(text[i] - '0');
        if (v > 255) throw ParameterError("point out of range in cycle notation");
        ++i;
      }
      if (v == 0) throw ParameterError("points are 1-based in cycle notation");
      cycle.push_back(v);
    }
    cycles.push_back(std::move(cycle));
    skip_ws();
  }

  std::size_t max_point = 0;
  for (auto const& c : cycles)
    for (unsigned v : c) max_point = std::max<std::size_t>(max_point, v);
  if (degree == 0) degree = max_point;
  if (max_point > degree) throw ParameterError("cycle point exceeds degree");

  Permutation p(degree);
  std::vector<bool> used(degree, false);
  for (auto const& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      unsigned from = c[k] - 1;
      if (used[from]) throw ParameterError("cycles are not disjoint: " + std::string(text));
      used[from] = true;
      p.images_[from] = static_cast<std::uint8_t>(c[(k + 1) % c.size()] - 1);
    }
  }
  return p;
}

Permutation Permutation::long_cycle(std::size_t degree) {
  Permutation p(degree);
  for (std::size_t i = 0; i < degree; ++i) p.images_[i] = static_cast<std::uint8_t>((i + 1) % degree);
  return p;
}

Permutation Permutation::operator*(Permutation const& other) const {
  if (degree() != other.degree()) throw ParameterError("permutation degree mismatch");
  Permutation r;
  r.images_.resize(degree());
  for (std::size_t i = 0; i < degree(); ++i) r.images_[i] = images_[other.images_[i]];
  return r;
}

Permutation Permutation::inverse() const {
  Permutation r;
  r.images_.resize(degree());
  for (std::size_t i = 0; i < degree(); ++i) r.images_[images_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::vector<std::vector<unsigned>> Permutation::cycles() const {
  std::vector<std::vector<unsigned>> out;
  std::vector<bool> seen(degree(), false);
  for (std::size_t start = 0; start < degree(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    std::vector<unsigned> cycle;
    for (std::size_t x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      cycle.push_back(static_cast<unsigned>(x + 1));
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

bool Permutation::is_even() const {
  std::size_t transpositions = 0;
  for (auto const& c : cycles()) transpositions += c.size() - 1;
  return transpositions % 2 == 0;
}

std::string Permutation::to_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream out;
  for (auto const& c : cs) {
    out << '(';
    for (std::size_t k = 0; k < c.size(); ++k) out << (k ? " " : "") << c[k];
    out << ')';
  }
  return out.str();
}

Permutation commutator(Permutation const& a, Permutation const& b) {
  return a.inverse() * b.inverse() * a * b;
}

namespace {

void check_cap(std::size_t degree, std::uint64_t order, PermOptions const& opts) {
  if (degree > 20 || order > opts.cap)
    throw ResourceError("permutation group of degree " + std::to_string(degree) +
                            " exceeds enumeration cap",
                        0);
}

void label(Enumerated<Permutation>& en) {
  auto elems = std::make_shared<std::vector<Permutation> const>(en.elements);
  en.group.set_labeler([elems](Index i) { return (*elems)[i].to_string(); });
}

}  // namespace

std::vector<Permutation> alternating_generators(std::size_t degree) {
  std::vector<Permutation> gens;
  if (degree < 3) return gens;
  gens.push_back(Permutation::parse_cycles("(1 2 3)", degree));
  if (degree == 3) return gens;
  if (degree % 2 == 1) {
    gens.push_back(Permutation::long_cycle(degree));
  } else {
    std::vector<unsigned> images(degree);
    images[0] = 1;
    for (std::size_t i = 1; i < degree; ++i) images[i] = static_cast<unsigned>(i + 2 <= degree ? i + 2 : 2);
    gens.push_back(Permutation::from_images(images));
  }
  return gens;
}

Enumerated<Permutation> alternating_group(std::size_t degree, PermOptions const& opts) {
  if (degree == 0) throw ParameterError("degree must be positive");
  check_cap(degree, degree < 2 ? 1 : factorial(static_cast<unsigned>(degree)) / 2, opts);
  std::vector<Permutation> gens;
  // A_n is generated by the 3-cycles (1 2 k).
  for (std::size_t k = 3; k <= degree; ++k)
    gens.push_back(Permutation::parse_cycles("(1 2 " + std::to_string(k) + ")", degree));
  auto en = generate(Permutation(degree), gens, GroupOptions{opts.cap, GroupOptions{}.table_limit});
  label(en);
  return en;
}

Enumerated<Permutation> symmetric_group(std::size_t degree, PermOptions const& opts) {
  if (degree == 0) throw ParameterError("degree must be positive");
  check_cap(degree, factorial(static_cast<unsigned>(degree)), opts);
  std::vector<Permutation> gens;
  if (degree >= 2) {
    gens.push_back(Permutation::parse_cycles("(1 2)", degree));
    gens.push_back(Permutation::long_cycle(degree));
  }
  auto en = generate(Permutation(degree), gens, GroupOptions{opts.cap, GroupOptions{}.table_limit});
  label(en);
  return en;
}

A5LemmaReport verify_a5_fixed_point_lemma() {
  auto a5 = alternating_group(5);
  // (12)(34), built from images so the check does not depend on the parser.
  Permutation const target = Permutation::from_images({2, 1, 4, 3, 5});
  A5LemmaReport report;
  for (auto const& s1 : a5.elements) {
    for (auto const& s2 : a5.elements) {
      ++report.pairs_examined;
      if (commutator(s1, s2) != target) continue;
      ++report.solutions;
      report.solution_pairs.emplace_back(s1, s2);
      if (s1(5) != 5 || s2(5) != 5) {
        throw VerificationFailure("[s1, s2] = (12)(34) with a moved fifth point",
                                  "s1=" + s1.to_string() + " s2=" + s2.to_string());
      }
    }
  }
  if (report.solutions == 0)
    throw VerificationFailure("no pair in A5 has commutator (12)(34)", "");
  return report;
}

}  // namespace finperf
