#pragma once

// The explicit objects built from (p, q, m, n):
//   B    sum-zero tuples in (Z/m)^q with the cyclic shift f
//   G_n  V_n x| A_p, V_n the sum-zero subspace of (F_q^n)^p
//   M_n  functions V_n - {0} -> B with the G_n action
//   P_n  M_n x| G_n
// and the certificates for their perfectness.
//
// Conventions: actions are on the right, h^g = g^-1 h g, [g, h] = g^-1 h^-1 g h,
// and semidirect elements are written h g with
// (h1 g1)(h2 g2) = (h1 + h2^(g1^-1)) (g1 g2).

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "finperf/ffla.hpp"
#include "finperf/group.hpp"
#include "finperf/perms.hpp"
#include "finperf/report.hpp"

namespace finperf {

struct Params {
  unsigned p = 5;
  std::uint32_t q = 2;
  std::uint32_t m = 3;
  std::size_t n = 1;

  // p >= 5 prime, q prime, p != q, gcd(m, pq) = 1. Throws ParameterError.
  void validate() const;
  std::string to_string() const;
  bool operator==(Params const&) const = default;
};

using Rng = std::mt19937_64;

// Caps and sampling knobs shared by the certificates.
struct CertOptions {
  std::size_t cap_enum = 20000;   // elements of an enumerated group or of V_n
  std::size_t cap_width = 20000;  // group order for exact width BFS
  std::size_t cap_solve = 10000;  // coefficients in a Z/m linear solve
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
};

// ---------------------------------------------------------------------------
// B and f

class BElement {
 public:
  BElement() = default;
  BElement(std::uint32_t q, std::uint32_t m);  // zero
  // Throws ParameterError unless the entries sum to 0 mod m.
  BElement(std::uint32_t m, std::vector<std::int64_t> const& t);

  std::uint32_t q() const noexcept { return static_cast<std::uint32_t>(t_.size()); }
  std::uint32_t m() const noexcept { return m_; }
  std::uint32_t operator[](std::size_t i) const noexcept { return t_[i]; }
  std::vector<std::uint32_t> const& entries() const noexcept { return t_; }

  bool is_zero() const noexcept;
  bool sums_to_zero() const noexcept;

  BElement operator+(BElement const& o) const;
  BElement operator-(BElement const& o) const;
  BElement operator-() const;
  BElement scaled(std::int64_t k) const;

  // (t_1, .., t_q) -> (t_q, t_1, .., t_{q-1})
  BElement f() const;
  BElement f_power(std::int64_t k) const;

  // Coordinates in the basis b_1..b_{q-1}: prefix sums t_1 + .. + t_i.
  std::vector<std::uint32_t> coordinates() const;
  static BElement from_coordinates(std::uint32_t q, std::uint32_t m,
                                   std::vector<std::uint32_t> const& coords);

  std::string to_string() const;

  auto operator<=>(BElement const&) const = default;
  bool operator==(BElement const&) const = default;

 private:
  std::uint32_t m_ = 1;
  std::vector<std::uint32_t> t_;
};

// b_1 = (1, -1, 0, .., 0), b_{i+1} = f(b_i).
std::vector<BElement> b_basis(std::uint32_t q, std::uint32_t m);
// All m^(q-1) elements of B in coordinate order; ResourceError above cap.
std::vector<BElement> b_elements(std::uint32_t q, std::uint32_t m, std::size_t cap);
BElement random_b(std::uint32_t q, std::uint32_t m, Rng& rng);

BElement f_minus_id(BElement const& b);
// (f - id)^-1 = q^-1 * sum_k k f^k on B, valid because 1 + f + .. + f^(q-1)
// vanishes on sum-zero tuples.
BElement f_minus_id_inverse(BElement const& b);
// Integer matrix of f - id in the basis b_i (column j = coordinates of
// (f - id) b_j). Its determinant is +-q.
std::vector<std::vector<std::int64_t>> f_minus_id_matrix(std::uint32_t q);

// Checks on B at (q, m): order of f, fixed points, invertibility of f - id,
// and the basis reconstruction identity on every element.
std::vector<Check> b_module_checks(std::uint32_t q, std::uint32_t m, std::size_t cap = 1u << 20);

// ---------------------------------------------------------------------------
// G_n = V_n x| A_p

struct GnElement {
  FqVector v;
  Permutation sigma;

  GnElement operator*(GnElement const& o) const;
  GnElement inverse() const;
  std::string to_string() const;

  auto operator<=>(GnElement const&) const = default;
  bool operator==(GnElement const&) const = default;
};

FqSubspace vn_space(Params const& params);
GnElement gn_identity(Params const& params);
// (0, s) for a two-element generating set of A_p and (b, e) for a basis of V_n.
std::vector<GnElement> gn_generators(Params const& params);
GnElement random_gn(Params const& params, FqSubspace const& vn, std::vector<Permutation> const& ap,
                    Rng& rng);
FqVector random_in(FqSubspace const& s, Rng& rng);

// A w in V_n with <w, v> = 1, supported on two blocks; nullopt for v = 0.
std::optional<FqVector> dual_witness(Params const& params, FqVector const& v);

// The p-cycle with (v_1, .., v_p)^s = (v_p, v_1, .., v_{p-1}).
Permutation certificate_cycle(unsigned p);

std::uint64_t gn_order(Params const& params);  // saturates at UINT64_MAX
Enumerated<GnElement> build_Gn(Params const& params, GroupOptions const& opts = {});

// ---------------------------------------------------------------------------
// M_n

// x(w) = f^<u, w>(c) on all of V_n - {0}.
struct DenseTerm {
  BElement c;
  FqVector u;

  auto operator<=>(DenseTerm const&) const = default;
  bool operator==(DenseTerm const&) const = default;
};

// An element of M_n: a finitely supported part plus a few dense terms. The
// dense terms make z_n and its translates representable at any n; they are
// closed under the action (u moves to u + v and to u^s).
class MnElement {
 public:
  MnElement() = default;
  explicit MnElement(Params const& params);  // zero

  // x_{v -> b}; v must be a nonzero vector of V_n.
  static MnElement single(Params const& params, FqVector const& v, BElement const& b);
  // x_{v -> i} = x_{v -> b_i}, i in [1, q-1].
  static MnElement basis(Params const& params, FqVector const& v, unsigned i);
  static MnElement dense(Params const& params, BElement const& c, FqVector const& u);

  Params const& params() const noexcept { return params_; }
  std::map<FqVector, BElement> const& sparse() const noexcept { return sparse_; }
  std::vector<DenseTerm> const& dense_terms() const noexcept { return dense_; }

  // x(w); zero at w = 0, which lies outside the domain.
  BElement operator()(FqVector const& w) const;

  MnElement operator+(MnElement const& o) const;
  MnElement operator-(MnElement const& o) const;
  MnElement operator-() const;

  // x^v(w) = f^<v, w>(x(w))
  MnElement act(FqVector const& v) const;
  // x^s(w) = x(w^(s^-1))
  MnElement act(Permutation const& s) const;
  // x^(v s) = (x^v)^s
  MnElement act(GnElement const& g) const;

  // Exact; enumerates V_n when dense terms do not cancel syntactically.
  bool is_zero(std::size_t cap = 1u << 20) const;
  bool operator==(MnElement const& o) const { return (*this - o).is_zero(); }

  std::string to_string() const;

 private:
  void normalize();

  Params params_;
  std::map<FqVector, BElement> sparse_;
  std::vector<DenseTerm> dense_;
};

// [x, g] = -x + x^g inside P_n.
MnElement commutator(MnElement const& x, GnElement const& g);
MnElement random_mn(Params const& params, std::vector<FqVector> const& vn_nonzero, Rng& rng,
                    bool allow_dense = true);

struct PnElement {
  MnElement x;
  GnElement g;

  PnElement operator*(PnElement const& o) const;
  PnElement inverse() const;
  bool operator==(PnElement const& o) const { return x == o.x && g == o.g; }
};

// ---------------------------------------------------------------------------
// Certificates

// Fixed points of the p-cycle, bijectivity of v -> [v, s], every element of
// A_p a commutator, and the exact width when G_n is small enough.
std::vector<Check> certify_Gn_perfect_width2(Params const& params, CertOptions const& opts = {});

// Commutator length in G_n of v (12)(34) with v = e_1 - e_5 in block
// coordinates (first coordinate of blocks 1 and 5).
Check gn_tightness_check(Params const& params, CertOptions const& opts = {});

// f - id invertible on B, a dual witness w with <w, v> = 1 for every
// nonzero v, and [x_{v->b}, w] = x_{v->(f-id)b}.
std::vector<Check> certify_Mn_perfect(Params const& params, CertOptions const& opts = {});

// Both certificates plus the combined conclusion.
std::vector<Check> certify_Pn_perfect(Params const& params, CertOptions const& opts = {});

// x^(s^-1 v s) = x^(v^s) and x^(g1 g2) = (x^g1)^g2 on random samples.
std::vector<Check> action_checks(Params const& params, CertOptions const& opts = {});

// [x, v s] = [x^v, s] + [x, v]; {v}^perp inside null([x, v]); orbit sums of [x, s] vanish.
std::vector<Check> avm_identities_check(Params const& params, CertOptions const& opts = {});

// For an enumerated M x| G with M abelian: d = width(M x| G) and the diameter
// of <[x, g]> with respect to the generators [x, g]; asserts diameter <= 2d.
Check mg_diameter_check(ConcreteGroup const& group, Bitset const& m_part, Bitset const& g_part);
// The same on G_n with M = V_n and G = A_p.
Check mg_diameter_check(Params const& params, CertOptions const& opts = {});

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  std::string to_string() const;
  bool operator==(Rational const&) const = default;
};

// n (p - 1) / p!, reduced. Reported, never verified.
Rational width_lower_bound(Params const& params);

}  // namespace finperf

template <>
struct std::hash<finperf::GnElement> {
  std::size_t operator()(finperf::GnElement const& g) const noexcept {
    return std::hash<finperf::FqVector>{}(g.v) * 1000003u ^ std::hash<finperf::Permutation>{}(g.sigma);
  }
};
