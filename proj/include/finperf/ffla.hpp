#pragma once

// Exact linear algebra over prime fields F_q.
//
// Vectors living in (F_q^n)^p carry a block length n; block i holds the
// component v_i. The standard form <v, w> = sum v_i w_i is used throughout.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "finperf/perms.hpp"

namespace finperf {

struct FqScalar {
  std::uint32_t value = 0;
  std::uint32_t q = 2;

  bool operator==(FqScalar const&) const = default;
};

// Throws ParameterError unless q is a prime in [2, 251].
void require_field(std::uint32_t q);

class FqVector {
 public:
  FqVector() = default;
  FqVector(std::uint32_t q, std::size_t length, std::size_t block_length = 0);
  FqVector(std::uint32_t q, std::vector<std::int64_t> const& coords, std::size_t block_length = 0);

  std::uint32_t q() const noexcept { return q_; }
  std::size_t size() const noexcept { return coords_.size(); }
  // 0 when the vector has no block structure.
  std::size_t block_length() const noexcept { return block_; }
  std::size_t num_blocks() const noexcept { return block_ ? coords_.size() / block_ : 0; }

  std::uint32_t operator[](std::size_t i) const noexcept { return coords_[i]; }
  void set(std::size_t i, std::int64_t value);
  // Component i as a plain vector of length block_length().
  FqVector block(std::size_t i) const;

  bool is_zero() const noexcept;

  FqVector operator+(FqVector const& other) const;
  FqVector operator-(FqVector const& other) const;
  FqVector operator-() const;
  FqVector scaled(std::uint32_t c) const;

  std::string to_string() const;
  std::vector<std::uint8_t> const& coords() const noexcept { return coords_; }

  auto operator<=>(FqVector const&) const = default;
  bool operator==(FqVector const&) const = default;

 private:
  std::uint32_t q_ = 2;
  std::size_t block_ = 0;
  std::vector<std::uint8_t> coords_;
};

FqScalar inner(FqVector const& v, FqVector const& w);

// v^sigma with (v_1..v_p)^sigma = (v_sigma(1), .., v_sigma(p)). A right action.
FqVector permute_blocks(FqVector const& v, Permutation const& sigma);

// Subspace stored as a reduced row-echelon basis, so equal subspaces have
// equal bases.
class FqSubspace {
 public:
  FqSubspace() = default;
  FqSubspace(std::uint32_t q, std::size_t ambient_dim, std::size_t block_length = 0);

  static FqSubspace span(std::uint32_t q, std::size_t ambient_dim, std::span<FqVector const> vectors,
                         std::size_t block_length = 0);
  static FqSubspace whole(std::uint32_t q, std::size_t ambient_dim, std::size_t block_length = 0);

  std::uint32_t q() const noexcept { return q_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t block_length() const noexcept { return block_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::vector<FqVector> const& basis() const noexcept { return basis_; }
  std::vector<std::size_t> const& pivots() const noexcept { return pivots_; }

  bool contains(FqVector const& v) const;
  bool contains(FqSubspace const& other) const;
  FqSubspace operator+(FqSubspace const& other) const;

  // All q^dim elements; throws ResourceError above cap.
  std::vector<FqVector> elements(std::size_t cap = 1u << 20) const;

  bool operator==(FqSubspace const& other) const {
    return q_ == other.q_ && ambient_ == other.ambient_ && basis_ == other.basis_;
  }

 private:
  std::uint32_t q_ = 2;
  std::size_t ambient_ = 0;
  std::size_t block_ = 0;
  std::vector<FqVector> basis_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank(std::uint32_t q, std::span<FqVector const> rows);

// {v in ambient : <v, s> = 0 for all s in S}.
FqSubspace orthogonal_complement(std::span<FqVector const> s, FqSubspace const& ambient);
FqSubspace orthogonal_complement(FqSubspace const& s, FqSubspace const& ambient);

// Gram matrix of a basis has full rank.
bool is_nondegenerate(FqSubspace const& space);

// V_n: tuples (v_1..v_p) in (F_q^n)^p with sum v_i = 0.
FqSubspace sumzero_space(unsigned p, std::uint32_t q, std::size_t n);
// Generic zero vector of (F_q^n)^p.
FqVector block_zero(unsigned p, std::uint32_t q, std::size_t n);

struct InvariantClosure {
  FqSubspace span;        // smallest A_p-invariant subspace containing the inputs
  FqSubspace orthogonal;  // its orthogonal complement inside V_n
  std::uint64_t bound = 0;  // k * p! / 2
};

// vectors must lie in V_n; vn is the ambient sum-zero space.
InvariantClosure ap_invariant_closure(std::span<FqVector const> vectors, FqSubspace const& vn,
                                      unsigned p);

struct OrbitVector {
  FqVector w;            // (u, .., u, (1 - p) u)
  FqVector u;            // direction orthogonal to every component of the defining vectors
  std::size_t orbit_size = 0;
};

// For W = {defining}^perp inside V_n, finds w in W whose A_p-orbit has
// exactly p elements. Throws NoSuchVector when the components of the
// defining vectors span all of F_q^n.
OrbitVector find_orbit_p_vector(std::span<FqVector const> defining, FqSubspace const& vn,
                                unsigned p);

// Orbit of v under the given permutations (typically all of A_p), sorted.
std::vector<FqVector> orbit(FqVector const& v, std::span<Permutation const> group);

// Square matrix over F_q, used for matrix groups given by generators.
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(std::uint32_t q, std::size_t dim);  // identity
  FqMatrix(std::uint32_t q, std::size_t dim, std::vector<std::int64_t> const& row_major);

  std::uint32_t q() const noexcept { return q_; }
  std::size_t dim() const noexcept { return dim_; }
  std::uint32_t at(std::size_t r, std::size_t c) const noexcept { return entries_[r * dim_ + c]; }
  std::uint32_t determinant() const;
  FqMatrix operator*(FqMatrix const& other) const;
  FqMatrix operator-() const;
  std::string to_string() const;
  std::vector<std::uint8_t> const& entries() const noexcept { return entries_; }

  auto operator<=>(FqMatrix const&) const = default;
  bool operator==(FqMatrix const&) const = default;

 private:
  std::uint32_t q_ = 2;
  std::size_t dim_ = 0;
  std::vector<std::uint8_t> entries_;
};

}  // namespace finperf

template <>
struct std::hash<finperf::FqVector> {
  std::size_t operator()(finperf::FqVector const& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v.coords()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

template <>
struct std::hash<finperf::FqMatrix> {
  std::size_t operator()(finperf::FqMatrix const& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : m.entries()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};
