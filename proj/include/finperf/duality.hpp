#pragma once

// Functionals M_n -> Z/m stored as coefficient tables over the standard
// basis x_{v->i}, with null sets, supports, z_n, and invariant functionals.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "finperf/constructions.hpp"

namespace finperf {

class Functional {
 public:
  using Key = std::pair<FqVector, unsigned>;  // (v, i), i in [1, q-1]

  Functional() = default;
  explicit Functional(Params const& params);  // zero

  Params const& params() const noexcept { return params_; }
  std::map<Key, std::uint32_t> const& coefficients() const noexcept { return coeffs_; }
  std::uint32_t coefficient(FqVector const& v, unsigned i) const;
  // Adds c to the coefficient at (v, i); zero coefficients are dropped.
  void add(FqVector const& v, unsigned i, std::int64_t c);

  // sum coeff(v, i) * (i-th coordinate of x(v))
  std::uint32_t operator()(MnElement const& x) const;

  Functional operator+(Functional const& o) const;
  Functional operator-(Functional const& o) const;
  Functional scaled(std::int64_t k) const;

  // Keys of the coefficient table, sorted.
  std::vector<FqVector> support() const;

  bool operator==(Functional const& o) const { return params_ == o.params_ && coeffs_ == o.coeffs_; }

 private:
  Params params_;
  std::map<Key, std::uint32_t> coeffs_;
};

// Records {v: coordinates, i: basis index, c: residue}.
nlohmann::json to_json(Functional const& phi);

// phi_v: 1 on x_{v->1}, 0 on every other basis element. v nonzero in V_n.
Functional phi_v(Params const& params, FqVector const& v);

// {0} together with the vanishing locus of x. Stored either as a finite list
// of members or as the finite complement of the members inside V_n.
struct NullSet {
  bool cofinite = false;
  std::set<FqVector> listed;  // members, or non-members when cofinite

  bool contains(FqVector const& w) const;
  std::string describe() const;
};

// Symbolic for elements with at most one dense term; otherwise enumerates V_n
// (ResourceError above cap).
NullSet null_set(MnElement const& x, std::size_t cap = 1u << 20);

// The constant function b_1 on V_n - {0}.
MnElement z_n(Params const& params);

struct InvariantFunctional {
  Functional phi;
  OrbitVector orbit_vector;
  std::vector<FqVector> orbit;     // supp(phi)
  std::uint64_t pre_rescale = 0;   // (sum phi_v)(z_n) as an integer, before dividing by p
  FqSubspace w;                    // the subspace W = defining^perp inside V_n
};

// phi = p^-1 sum_{v in O(w)} phi_v for the orbit-p vector w of W. Checks
// phi(z_n) = 1, supp(phi) = O(w) inside W, and A_p-invariance before returning;
// throws VerificationFailure otherwise and NoSuchVector when no w exists.
InvariantFunctional invariant_functional(Params const& params, std::vector<FqVector> const& defining);

// A_p-invariance checked exactly on the basis, W^perp-invariance on a basis of
// W^perp, and an explicit note that G_n-invariance is not claimed.
std::vector<Check> check_invariance(Functional const& phi, Params const& params,
                                    std::vector<FqVector> const& defining);

// Every functional invariant under the generators of G_n vanishes on z_n:
// z_n lies in the Z/m-span of {x^g - x}. Solved over Z/m and confirmed by an
// explicit sum of commutators.
std::vector<Check> no_global_invariant_functional(Params const& params, CertOptions const& opts = {});

// psi(x g) = phi(x) on M_n x| H, H generated by h_gens.
class ExtendedFunctional {
 public:
  // Throws VerificationFailure unless phi(x^h) = phi(x) for every generator h.
  ExtendedFunctional(Functional phi, std::vector<GnElement> h_gens);

  std::uint32_t operator()(PnElement const& xg) const { return phi_(xg.x); }
  Functional const& base() const noexcept { return phi_; }
  std::vector<GnElement> const& generators() const noexcept { return gens_; }

 private:
  Functional phi_;
  std::vector<GnElement> gens_;
};

ExtendedFunctional extend_invariant_functional(Functional const& phi, std::vector<GnElement> const& h_gens);

// psi(a b) = psi(a) + psi(b) on sampled pairs from M_n x| H; elements of H are
// random words in its generators.
Check extension_homomorphism_check(ExtendedFunctional const& psi, CertOptions const& opts = {});

// First violated basis element (x, h) of phi(x^h) = phi(x), if any.
std::optional<std::pair<MnElement, GnElement>> invariance_violation(Functional const& phi,
                                                                    std::vector<GnElement> const& gens);

// The defining vector (e_1, -e_1, 0, .., 0) in V_n.
FqVector standard_defining_vector(Params const& params);

}  // namespace finperf
