#include "finperf/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "finperf/arith.hpp"
#include "finperf/error.hpp"
#include "finperf/zmod.hpp"

namespace finperf {

namespace {

void require_basis_vector(Params const& params, FqVector const& v) {
  if (v.is_zero()) throw ParameterError("functional coefficients need a nonzero v");
  if (v.q() != params.q || v.size() != params.p * params.n || !vn_space(params).contains(v))
    throw ParameterError("vector " + v.to_string() + " is not in V_n");
}

std::vector<FqVector> nonzero_vn(Params const& params, std::size_t cap) {
  auto all = vn_space(params).elements(cap);
  std::erase_if(all, [](FqVector const& v) { return v.is_zero(); });
  return all;
}

std::uint64_t vn_count(Params const& params) {
  long double s = std::pow(static_cast<long double>(params.q), static_cast<long double>(params.n * (params.p - 1)));
  return s > 1e18L ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(s);
}

std::string join(std::vector<FqVector> const& vs, std::size_t limit = 8) {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < vs.size() && k < limit; ++k) out << (k ? ", " : "") << vs[k].to_string();
  if (vs.size() > limit) out << ", ..";
  out << '}';
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Functional

Functional::Functional(Params const& params) : params_(params) {}

std::uint32_t Functional::coefficient(FqVector const& v, unsigned i) const {
  auto it = coeffs_.find({v, i});
  return it == coeffs_.end() ? 0 : it->second;
}

void Functional::add(FqVector const& v, unsigned i, std::int64_t c) {
  if (i < 1 || i >= params_.q) throw ParameterError("basis index must be in [1, q-1]");
  require_basis_vector(params_, v);
  Key key{v, i};
  std::uint32_t value = mod_reduce(static_cast<std::int64_t>(coefficient(v, i)) + mod_reduce(c, params_.m), params_.m);
  if (value == 0) coeffs_.erase(key);
  else coeffs_[key] = value;
}

std::uint32_t Functional::operator()(MnElement const& x) const {
  if (!(x.params() == params_)) throw ParameterError("functional and element have different parameters");
  std::uint64_t const m = params_.m;
  std::uint64_t acc = 0;
  FqVector const* last = nullptr;
  std::vector<std::uint32_t> coords;
  for (auto const& [key, c] : coeffs_) {
    if (!last || *last != key.first) {
      coords = x(key.first).coordinates();
      last = &key.first;
    }
    acc = (acc + static_cast<std::uint64_t>(c) * coords[key.second - 1]) % m;
  }
  return static_cast<std::uint32_t>(acc % m);
}

Functional Functional::operator+(Functional const& o) const {
  if (!(params_ == o.params_)) throw ParameterError("functionals with different parameters");
  Functional r = *this;
  for (auto const& [key, c] : o.coeffs_) r.add(key.first, key.second, c);
  return r;
}

Functional Functional::operator-(Functional const& o) const { return *this + o.scaled(-1); }

Functional Functional::scaled(std::int64_t k) const {
  Functional r(params_);
  std::uint64_t const kk = mod_reduce(k, params_.m);
  for (auto const& [key, c] : coeffs_) {
    auto v = static_cast<std::uint32_t>(kk * c % params_.m);
    if (v) r.coeffs_[key] = v;
  }
  return r;
}

std::vector<FqVector> Functional::support() const {
  std::vector<FqVector> out;
  for (auto const& [key, c] : coeffs_)
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  return out;
}

nlohmann::json to_json(Functional const& phi) {
  auto arr = nlohmann::json::array();
  for (auto const& [key, c] : phi.coefficients()) {
    std::vector<unsigned> coords(key.first.coords().begin(), key.first.coords().end());
    arr.push_back({{"v", coords}, {"i", key.second}, {"c", c}});
  }
  return arr;
}

Functional phi_v(Params const& params, FqVector const& v) {
  Functional phi(params);
  phi.add(v, 1, 1);
  return phi;
}

// ---------------------------------------------------------------------------
// Null sets and z_n

bool NullSet::contains(FqVector const& w) const {
  bool listed_here = listed.count(w) > 0;
  return cofinite ? !listed_here : listed_here;
}

std::string NullSet::describe() const {
  std::vector<FqVector> vs(listed.begin(), listed.end());
  if (cofinite) return vs.empty() ? "V_n" : "V_n - " + join(vs);
  return join(vs);
}

NullSet null_set(MnElement const& x, std::size_t cap) {
  NullSet out;
  auto const& dense = x.dense_terms();
  if (dense.empty()) {
    // x vanishes off its finitely many keys (and is nonzero on each key).
    out.cofinite = true;
    for (auto const& [w, b] : x.sparse()) out.listed.insert(w);
    return out;
  }
  auto const zero = block_zero(x.params().p, x.params().q, x.params().n);
  out.listed.insert(zero);
  if (dense.size() == 1) {
    // f^k(c) != 0 for c != 0, so zeros can only sit on sparse keys.
    for (auto const& [w, b] : x.sparse())
      if (x(w).is_zero()) out.listed.insert(w);
    return out;
  }
  for (auto const& w : vn_space(x.params()).elements(cap))
    if (x(w).is_zero()) out.listed.insert(w);
  return out;
}

MnElement z_n(Params const& params) {
  return MnElement::dense(params, b_basis(params.q, params.m)[0], block_zero(params.p, params.q, params.n));
}

FqVector standard_defining_vector(Params const& params) {
  FqVector v = block_zero(params.p, params.q, params.n);
  v.set(0, 1);
  v.set(params.n, -1);
  return v;
}

// ---------------------------------------------------------------------------
// Invariance

std::optional<std::pair<MnElement, GnElement>> invariance_violation(Functional const& phi,
                                                                    std::vector<GnElement> const& gens) {
  Params const& params = phi.params();
  auto const supp = phi.support();
  for (auto const& h : gens) {
    // phi(x_{w->i}^h) can only be nonzero when w or w^sigma lies in supp.
    std::set<FqVector> candidates(supp.begin(), supp.end());
    auto const back = h.sigma.inverse();
    for (auto const& s : supp) candidates.insert(permute_blocks(s, back));
    for (auto const& w : candidates) {
      for (unsigned i = 1; i < params.q; ++i) {
        auto x = MnElement::basis(params, w, i);
        if (phi(x.act(h)) != phi(x)) return std::make_pair(x, h);
      }
    }
  }
  return std::nullopt;
}

InvariantFunctional invariant_functional(Params const& params, std::vector<FqVector> const& defining) {
  params.validate();
  if (params.m < 2) throw ParameterError("an invariant functional with phi(z_n) = 1 needs m >= 2");
  auto const vn = vn_space(params);
  for (auto const& d : defining)
    if (d.size() != vn.ambient_dim() || d.q() != params.q || !vn.contains(d))
      throw ParameterError("defining vector " + d.to_string() + " is not in V_n");

  InvariantFunctional out;
  out.w = orthogonal_complement(std::span<FqVector const>(defining), vn);
  out.orbit_vector = find_orbit_p_vector(defining, vn, params.p);
  auto const gens = alternating_generators(params.p);
  out.orbit = orbit(out.orbit_vector.w, gens);

  Functional sum(params);
  for (auto const& v : out.orbit) sum = sum + phi_v(params, v);
  auto const z = z_n(params);
  // Integer value of sum phi_v on z_n (each term lifts to 1), then checked mod m.
  for (auto const& v : out.orbit) out.pre_rescale += z(v).coordinates()[0];
  if (out.pre_rescale % params.m != sum(z))
    throw VerificationFailure("pre-rescale value disagrees with evaluation", std::to_string(sum(z)));
  out.phi = sum.scaled(mod_inverse(params.p % params.m, params.m));

  if (out.phi(z) != 1)
    throw VerificationFailure("phi(z_n) != 1", "phi(z_n) = " + std::to_string(out.phi(z)));
  if (out.phi.support() != out.orbit)
    throw VerificationFailure("supp(phi) differs from the orbit", join(out.phi.support()));
  for (auto const& v : out.orbit)
    if (!out.w.contains(v)) throw VerificationFailure("orbit leaves W", v.to_string());
  std::vector<GnElement> ap_gens;
  for (auto const& s : gens) ap_gens.push_back({block_zero(params.p, params.q, params.n), s});
  if (auto bad = invariance_violation(out.phi, ap_gens))
    throw VerificationFailure("phi is not A_p-invariant",
                              "x=" + bad->first.to_string() + " s=" + bad->second.sigma.to_string());
  return out;
}

std::vector<Check> check_invariance(Functional const& phi, Params const& params,
                                    std::vector<FqVector> const& defining) {
  std::vector<Check> out;
  std::string const tag = " " + params.to_string();
  auto const zero = block_zero(params.p, params.q, params.n);

  out.push_back(timed([&] {
    // Invariance under generators is equivalent to invariance under A_p;
    // every element is used when A_p is small.
    std::vector<Permutation> perms;
    std::string scope;
    if (factorial(params.p) / 2 <= CertOptions{}.cap_enum) {
      perms = alternating_group(params.p).elements;
      scope = "all " + std::to_string(perms.size()) + " elements of A_p";
    } else {
      perms = alternating_generators(params.p);
      scope = "generators of A_p";
    }
    std::vector<GnElement> gens;
    for (auto const& s : perms) gens.push_back({zero, s});
    auto bad = invariance_violation(phi, gens);
    auto c = make_check("duality.ap_invariance" + tag, !bad,
                        "phi(x^s) = phi(x) on basis elements over supp(phi) and its translates, " + scope);
    if (bad) c.witness = "s=" + bad->second.sigma.to_string() + " x=" + bad->first.to_string();
    c.data = {{"permutations", perms.size()}, {"support", phi.support().size()}};
    return c;
  }));

  out.push_back(timed([&] {
    auto const vn = vn_space(params);
    auto const w = orthogonal_complement(std::span<FqVector const>(defining), vn);
    auto const wperp = orthogonal_complement(w, vn);
    if (wperp.dim() == 0)
      return make_check("duality.wperp_invariance" + tag, true, "W = V_n, so W^perp = 0 and the condition is vacuous");
    std::vector<GnElement> gens;
    for (auto const& v : wperp.basis()) gens.push_back({v, Permutation(params.p)});
    auto bad = invariance_violation(phi, gens);
    auto c = make_check("duality.wperp_invariance" + tag, !bad,
                        "phi(x^v) = phi(x) for a basis of W^perp (dim " + std::to_string(wperp.dim()) + ")");
    if (bad) c.witness = "v=" + bad->second.v.to_string() + " x=" + bad->first.to_string();
    c.data = {{"wperp_dim", wperp.dim()}};
    return c;
  }));

  // Not claimed: a generator of V_n outside W^perp usually moves phi.
  {
    std::optional<std::pair<MnElement, GnElement>> bad;
    std::vector<GnElement> vgens;
    auto const vn = vn_space(params);
    for (auto const& v : vn.basis()) vgens.push_back({v, Permutation(params.p)});
    bad = invariance_violation(phi, vgens);
    auto c = make_check("duality.global_invariance" + tag, Status::not_applicable,
                        "invariance under all of G_n is not claimed; " +
                            std::string(bad ? "a V_n generator moves phi" : "no V_n generator moves phi"));
    if (bad) c.witness = "v=" + bad->second.v.to_string() + " x=" + bad->first.to_string();
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Check> no_global_invariant_functional(Params const& params, CertOptions const& opts) {
  params.validate();
  std::string const tag = " " + params.to_string();
  std::vector<Check> out;
  std::uint64_t const vsize = vn_count(params);
  std::uint64_t const ncoef = vsize == std::numeric_limits<std::uint64_t>::max()
                                  ? vsize
                                  : (vsize - 1) * (params.q - 1);
  if (ncoef > opts.cap_solve || vsize > opts.cap_enum) {
    for (char const* name : {"duality.no_global_invariant.solve", "duality.no_global_invariant.witness"})
      out.push_back(make_check(std::string(name) + tag, Status::skipped,
                               "basis of M_n has " + std::to_string(ncoef) + " coefficients, above the solve cap " +
                                   std::to_string(opts.cap_solve)));
    return out;
  }
  auto const vn_nz = nonzero_vn(params, opts.cap_enum);
  auto const z = z_n(params);

  out.push_back(timed([&] {
    std::map<FqVector, std::size_t> index;
    for (std::size_t k = 0; k < vn_nz.size(); ++k) index.emplace(vn_nz[k], k);
    std::size_t const q1 = params.q - 1;
    auto coords = [&](MnElement const& x) {
      ZmodRow row(vn_nz.size() * q1, 0);
      for (auto const& [w, b] : x.sparse()) {
        auto c = b.coordinates();
        for (std::size_t i = 0; i < q1; ++i) row[index.at(w) * q1 + i] = c[i];
      }
      return row;
    };
    auto const gens = gn_generators(params);
    std::vector<ZmodRow> rows;
    for (auto const& g : gens)
      for (auto const& w : vn_nz)
        for (unsigned i = 1; i <= q1; ++i) {
          auto row = coords(commutator(MnElement::basis(params, w, i), g));
          if (std::any_of(row.begin(), row.end(), [](std::uint32_t v) { return v != 0; }))
            rows.push_back(std::move(row));
        }
    ZmodRowSpan span(params.m, vn_nz.size() * q1);
    std::size_t const generated = rows.size();
    span.assign(std::move(rows));
    // z_n has b-coordinates (1, 0, .., 0) at every nonzero v.
    ZmodRow target(vn_nz.size() * q1, 0);
    for (std::size_t k = 0; k < vn_nz.size(); ++k) target[k * q1] = 1 % params.m;
    bool in_span = span.contains(target);
    auto c = make_check("duality.no_global_invariant.solve" + tag, in_span,
                        in_span ? "z_n lies in the Z/m-span of {x^g - x}; every G_n-invariant functional kills z_n"
                                : "z_n is outside the span of {x^g - x}: inconsistent with perfectness of P_n");
    c.data = {{"coefficients", vn_nz.size() * q1},
              {"relations", generated},
              {"generators", gens.size()},
              {"span_rank_rows", span.rows().size()}};
    return c;
  }));

  out.push_back(timed([&] {
    // z_n = sum_v [x_{v -> (f-id)^-1 b_1}, w_v] with <w_v, v> = 1.
    auto const b1 = f_minus_id_inverse(b_basis(params.q, params.m)[0]);
    MnElement sum(params);
    std::string missing;
    for (auto const& v : vn_nz) {
      auto w = dual_witness(params, v);
      if (!w) {
        missing = v.to_string();
        break;
      }
      sum = sum + commutator(MnElement::single(params, v, b1), GnElement{*w, Permutation(params.p)});
    }
    bool ok = missing.empty() && sum == z;
    auto c = make_check("duality.no_global_invariant.witness" + tag, ok,
                        "explicit sum of " + std::to_string(vn_nz.size()) + " commutators equals z_n");
    if (!missing.empty()) c.witness = "no dual witness for " + missing;
    c.data = {{"commutators", vn_nz.size()}};
    return c;
  }));
  return out;
}

// ---------------------------------------------------------------------------
// Extension to M_n x| H

ExtendedFunctional::ExtendedFunctional(Functional phi, std::vector<GnElement> h_gens)
    : phi_(std::move(phi)), gens_(std::move(h_gens)) {
  if (auto bad = invariance_violation(phi_, gens_))
    throw VerificationFailure("functional is not invariant under the given generators",
                              "x=" + bad->first.to_string() + " h=" + bad->second.to_string());
}

ExtendedFunctional extend_invariant_functional(Functional const& phi, std::vector<GnElement> const& h_gens) {
  return ExtendedFunctional(phi, h_gens);
}

Check extension_homomorphism_check(ExtendedFunctional const& psi, CertOptions const& opts) {
  Params const& params = psi.base().params();
  return timed([&] {
    Rng rng(opts.seed);
    auto const vn = vn_space(params);
    auto const supp = psi.base().support();
    auto const id = gn_identity(params);
    auto const& gens = psi.generators();

    auto random_h = [&] {
      GnElement h = id;
      if (gens.empty()) return h;
      std::size_t len = rng() % 8;
      for (std::size_t k = 0; k < len; ++k) {
        auto const& g = gens[rng() % gens.size()];
        h = h * (rng() % 2 ? g : g.inverse());
      }
      return h;
    };
    auto random_key = [&] {
      if (!supp.empty() && rng() % 2) return supp[rng() % supp.size()];
      for (;;) {
        auto v = random_in(vn, rng);
        if (!v.is_zero()) return v;
      }
    };
    auto random_x = [&] {
      MnElement x(params);
      std::size_t k = 1 + rng() % 4;
      for (std::size_t i = 0; i < k; ++i)
        x = x + MnElement::single(params, random_key(), random_b(params.q, params.m, rng));
      if (rng() % 4 == 0) x = x + MnElement::dense(params, random_b(params.q, params.m, rng), random_in(vn, rng));
      return x;
    };

    std::size_t bad = 0;
    std::string first;
    for (std::size_t s = 0; s < opts.samples; ++s) {
      PnElement a{random_x(), random_h()}, b{random_x(), random_h()};
      std::uint64_t lhs = psi(a * b);
      std::uint64_t rhs = (static_cast<std::uint64_t>(psi(a)) + psi(b)) % params.m;
      if (lhs != rhs) {
        ++bad;
        if (first.empty()) first = "x1=" + a.x.to_string() + " g1=" + a.g.to_string();
      }
    }
    auto c = make_check("duality.extension_homomorphism " + params.to_string(), bad == 0,
                        std::to_string(opts.samples) + " sampled pairs satisfy psi(ab) = psi(a) + psi(b)");
    if (!first.empty()) c.witness = first;
    c.data = {{"samples", opts.samples}, {"violations", bad}, {"h_generators", gens.size()}};
    return c;
  });
}

}  // namespace finperf
