#include "finperf/ffla.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "finperf/arith.hpp"

namespace finperf {

void require_field(std::uint32_t q) {
  if (q > 251 || !is_prime(q)) throw ParameterError("q must be a prime below 256, got " + std::to_string(q));
}

// ---------------------------------------------------------------------------
// FqVector

FqVector::FqVector(std::uint32_t q, std::size_t length, std::size_t block_length)
    : q_(q), block_(block_length), coords_(length, 0) {
  if (block_ && length % block_ != 0) throw ParameterError("length is not a multiple of the block length");
}

FqVector::FqVector(std::uint32_t q, std::vector<std::int64_t> const& coords, std::size_t block_length)
    : FqVector(q, coords.size(), block_length) {
  for (std::size_t i = 0; i < coords.size(); ++i) coords_[i] = static_cast<std::uint8_t>(mod_reduce(coords[i], q));
}

void FqVector::set(std::size_t i, std::int64_t value) {
  coords_[i] = static_cast<std::uint8_t>(mod_reduce(value, q_));
}

FqVector FqVector::block(std::size_t i) const {
  FqVector out(q_, block_);
  std::copy_n(coords_.begin() + static_cast<std::ptrdiff_t>(i * block_), block_, out.coords_.begin());
  return out;
}

bool FqVector::is_zero() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(), [](auto c) { return c == 0; });
}

FqVector FqVector::operator+(FqVector const& other) const {
  if (size() != other.size() || q_ != other.q_) throw ParameterError("vector length mismatch");
  FqVector r = *this;
  for (std::size_t i = 0; i < size(); ++i) r.coords_[i] = static_cast<std::uint8_t>((coords_[i] + other.coords_[i]) % q_);
  return r;
}

FqVector FqVector::operator-(FqVector const& other) const { return *this + (-other); }

FqVector FqVector::operator-() const {
  FqVector r = *this;
  for (auto& c : r.coords_) c = static_cast<std::uint8_t>((q_ - c) % q_);
  return r;
}

FqVector FqVector::scaled(std::uint32_t c) const {
  FqVector r = *this;
  for (auto& x : r.coords_) x = static_cast<std::uint8_t>((x * (c % q_)) % q_);
  return r;
}

std::string FqVector::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out << ((block_ && i % block_ == 0) ? " | " : " ");
    out << static_cast<unsigned>(coords_[i]);
  }
  out << ')';
  return out.str();
}

FqScalar inner(FqVector const& v, FqVector const& w) {
  if (v.size() != w.size() || v.q() != w.q()) throw ParameterError("inner product of vectors of different length");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) acc += static_cast<std::uint64_t>(v[i]) * w[i];
  return FqScalar{static_cast<std::uint32_t>(acc % v.q()), v.q()};
}

FqVector permute_blocks(FqVector const& v, Permutation const& sigma) {
  std::size_t const n = v.block_length();
  if (n == 0 || v.num_blocks() != sigma.degree()) throw ParameterError("permutation does not match block count");
  FqVector r(v.q(), v.size(), n);
  for (std::size_t i = 0; i < sigma.degree(); ++i) {
    std::size_t src = sigma.image0(i);
    for (std::size_t k = 0; k < n; ++k) r.set(i * n + k, v[src * n + k]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Row reduction

namespace {

struct Echelon {
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<std::size_t> pivots;
};

Echelon reduce(std::uint32_t q, std::vector<std::vector<std::uint32_t>> rows, std::size_t ncols) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t pr = r;
    while (pr < rows.size() && rows[pr][c] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[r], rows[pr]);
    std::uint32_t inv = mod_inverse(rows[r][c], q);
    for (auto& x : rows[r]) x = (x * inv) % q;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      std::uint32_t f = rows[i][c];
      for (std::size_t k = 0; k < ncols; ++k) rows[i][k] = (rows[i][k] + (q - f) * rows[r][k]) % q;
    }
    e.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

std::vector<std::uint32_t> to_row(FqVector const& v) {
  return std::vector<std::uint32_t>(v.coords().begin(), v.coords().end());
}

FqVector from_row(std::uint32_t q, std::vector<std::uint32_t> const& row, std::size_t block) {
  FqVector v(q, row.size(), block);
  for (std::size_t i = 0; i < row.size(); ++i) v.set(i, row[i]);
  return v;
}

// Basis of {x : rows * x = 0}.
std::vector<std::vector<std::uint32_t>> nullspace(std::uint32_t q, std::vector<std::vector<std::uint32_t>> rows,
                                                  std::size_t ncols) {
  auto e = reduce(q, std::move(rows), ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> x(ncols, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = (q - e.rows[i][free]) % q;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

std::size_t rank(std::uint32_t q, std::span<FqVector const> rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<std::uint32_t>> m;
  for (auto const& v : rows) m.push_back(to_row(v));
  return reduce(q, std::move(m), rows.front().size()).rows.size();
}

// ---------------------------------------------------------------------------
// FqSubspace

FqSubspace::FqSubspace(std::uint32_t q, std::size_t ambient_dim, std::size_t block_length)
    : q_(q), ambient_(ambient_dim), block_(block_length) {}

FqSubspace FqSubspace::span(std::uint32_t q, std::size_t ambient_dim, std::span<FqVector const> vectors,
                            std::size_t block_length) {
  FqSubspace s(q, ambient_dim, block_length);
  std::vector<std::vector<std::uint32_t>> rows;
  for (auto const& v : vectors) {
    if (v.size() != ambient_dim || v.q() != q) throw ParameterError("vector outside the ambient space");
    rows.push_back(to_row(v));
  }
  auto e = reduce(q, std::move(rows), ambient_dim);
  for (auto const& row : e.rows) s.basis_.push_back(from_row(q, row, block_length));
  s.pivots_ = std::move(e.pivots);
  return s;
}

FqSubspace FqSubspace::whole(std::uint32_t q, std::size_t ambient_dim, std::size_t block_length) {
  std::vector<FqVector> unit;
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    FqVector e(q, ambient_dim, block_length);
    e.set(i, 1);
    unit.push_back(std::move(e));
  }
  return span(q, ambient_dim, unit, block_length);
}

bool FqSubspace::contains(FqVector const& v) const {
  if (v.size() != ambient_) return false;
  // Reduce against the echelon basis; membership iff the remainder vanishes.
  std::vector<std::uint32_t> r = to_row(v);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    std::uint32_t f = r[pivots_[i]];
    if (f == 0) continue;
    for (std::size_t k = 0; k < ambient_; ++k) r[k] = (r[k] + (q_ - f) * basis_[i][k]) % q_;
  }
  return std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; });
}

bool FqSubspace::contains(FqSubspace const& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](auto const& v) { return contains(v); });
}

FqSubspace FqSubspace::operator+(FqSubspace const& other) const {
  std::vector<FqVector> all = basis_;
  all.insert(all.end(), other.basis_.begin(), other.basis_.end());
  return span(q_, ambient_, all, block_);
}

std::vector<FqVector> FqSubspace::elements(std::size_t cap) const {
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    count *= q_;
    if (count > cap) throw ResourceError("subspace has more than " + std::to_string(cap) + " elements", 0);
  }
  std::vector<FqVector> out;
  out.reserve(count);
  out.emplace_back(q_, ambient_, block_);
  for (auto const& b : basis_) {
    std::size_t const existing = out.size();
    for (std::uint32_t c = 1; c < q_; ++c) {
      FqVector step = b.scaled(c);
      for (std::size_t i = 0; i < existing; ++i) out.push_back(out[i] + step);
    }
  }
  return out;
}

FqSubspace orthogonal_complement(std::span<FqVector const> s, FqSubspace const& ambient) {
  auto const& basis = ambient.basis();
  std::uint32_t const q = ambient.q();
  std::vector<std::vector<std::uint32_t>> rows;
  for (auto const& v : s) {
    if (v.size() != ambient.ambient_dim()) throw ParameterError("dimension mismatch in orthogonal complement");
    std::vector<std::uint32_t> row;
    for (auto const& b : basis) row.push_back(inner(v, b).value);
    rows.push_back(std::move(row));
  }
  std::vector<FqVector> out;
  for (auto const& coeffs : nullspace(q, std::move(rows), basis.size())) {
    FqVector v(q, ambient.ambient_dim(), ambient.block_length());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (coeffs[k]) v = v + basis[k].scaled(coeffs[k]);
    out.push_back(std::move(v));
  }
  return FqSubspace::span(q, ambient.ambient_dim(), out, ambient.block_length());
}

FqSubspace orthogonal_complement(FqSubspace const& s, FqSubspace const& ambient) {
  return orthogonal_complement(std::span<FqVector const>(s.basis()), ambient);
}

bool is_nondegenerate(FqSubspace const& space) {
  auto const& b = space.basis();
  if (b.empty()) return true;
  std::vector<FqVector> gram;
  for (auto const& x : b) {
    FqVector row(space.q(), b.size());
    for (std::size_t j = 0; j < b.size(); ++j) row.set(j, inner(x, b[j]).value);
    gram.push_back(std::move(row));
  }
  return rank(space.q(), gram) == b.size();
}

FqVector block_zero(unsigned p, std::uint32_t q, std::size_t n) { return FqVector(q, static_cast<std::size_t>(p) * n, n); }

FqSubspace sumzero_space(unsigned p, std::uint32_t q, std::size_t n) {
  if (p < 5 || !is_prime(p)) throw ParameterError("p must be a prime >= 5, got " + std::to_string(p));
  require_field(q);
  if (p == q) throw ParameterError("p and q must be distinct");
  if (n == 0) throw ParameterError("n must be positive");
  std::vector<FqVector> gens;
  for (std::size_t i = 0; i + 1 < p; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      FqVector v = block_zero(p, q, n);
      v.set(i * n + k, 1);
      v.set((p - 1) * n + k, -1);
      gens.push_back(std::move(v));
    }
  }
  return FqSubspace::span(q, static_cast<std::size_t>(p) * n, gens, n);
}

std::vector<FqVector> orbit(FqVector const& v, std::span<Permutation const> group) {
  std::set<FqVector> seen{v};
  std::vector<FqVector> queue{v};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto const& s : group) {
      FqVector w = permute_blocks(queue[head], s);
      if (seen.insert(w).second) queue.push_back(std::move(w));
    }
  }
  return {seen.begin(), seen.end()};
}

InvariantClosure ap_invariant_closure(std::span<FqVector const> vectors, FqSubspace const& vn, unsigned p) {
  for (auto const& v : vectors)
    if (!vn.contains(v)) throw ParameterError("input vector is not in V_n");
  auto gens = alternating_generators(p);
  FqSubspace cur = FqSubspace::span(vn.q(), vn.ambient_dim(), vectors, vn.block_length());
  for (;;) {
    std::vector<FqVector> next = cur.basis();
    for (auto const& b : cur.basis())
      for (auto const& s : gens) next.push_back(permute_blocks(b, s));
    FqSubspace grown = FqSubspace::span(vn.q(), vn.ambient_dim(), next, vn.block_length());
    if (grown.dim() == cur.dim()) break;
    cur = std::move(grown);
  }
  InvariantClosure out;
  out.orthogonal = orthogonal_complement(cur, vn);
  out.span = std::move(cur);
  out.bound = vectors.size() * (factorial(p) / 2);
  return out;
}

OrbitVector find_orbit_p_vector(std::span<FqVector const> defining, FqSubspace const& vn, unsigned p) {
  std::size_t const n = vn.block_length();
  std::uint32_t const q = vn.q();
  std::vector<FqVector> components;
  for (auto const& v : defining) {
    if (!vn.contains(v)) throw ParameterError("defining vector is not in V_n");
    for (std::size_t j = 0; j < p; ++j) components.push_back(v.block(j));
  }
  FqSubspace comp_span = FqSubspace::span(q, n, components);
  FqSubspace complement = orthogonal_complement(comp_span, FqSubspace::whole(q, n));
  if (complement.dim() == 0)
    throw NoSuchVector("components of the defining vectors span all of F_q^n");

  OrbitVector out;
  out.u = complement.basis().front();
  out.w = block_zero(p, q, n);
  FqVector last = out.u.scaled(mod_reduce(1 - static_cast<std::int64_t>(p), q));
  for (std::size_t j = 0; j < p; ++j) {
    FqVector const& src = (j + 1 < p) ? out.u : last;
    for (std::size_t k = 0; k < n; ++k) out.w.set(j * n + k, src[k]);
  }
  auto gens = alternating_generators(p);
  out.orbit_size = orbit(out.w, gens).size();
  return out;
}

// ---------------------------------------------------------------------------
// FqMatrix

FqMatrix::FqMatrix(std::uint32_t q, std::size_t dim) : q_(q), dim_(dim), entries_(dim * dim, 0) {
  for (std::size_t i = 0; i < dim; ++i) entries_[i * dim + i] = 1;
}

FqMatrix::FqMatrix(std::uint32_t q, std::size_t dim, std::vector<std::int64_t> const& row_major)
    : q_(q), dim_(dim), entries_(dim * dim, 0) {
  if (row_major.size() != dim * dim) throw ParameterError("matrix entry count is not dim^2");
  for (std::size_t i = 0; i < row_major.size(); ++i)
    entries_[i] = static_cast<std::uint8_t>(mod_reduce(row_major[i], q));
}

FqMatrix FqMatrix::operator*(FqMatrix const& other) const {
  if (dim_ != other.dim_ || q_ != other.q_) throw ParameterError("matrix dimension mismatch");
  FqMatrix r(q_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < dim_; ++k) acc += static_cast<std::uint64_t>(at(i, k)) * other.at(k, j);
      r.entries_[i * dim_ + j] = static_cast<std::uint8_t>(acc % q_);
    }
  return r;
}

FqMatrix FqMatrix::operator-() const {
  FqMatrix r = *this;
  for (auto& x : r.entries_) x = static_cast<std::uint8_t>((q_ - x) % q_);
  return r;
}

std::uint32_t FqMatrix::determinant() const {
  std::vector<std::vector<std::uint32_t>> m(dim_, std::vector<std::uint32_t>(dim_));
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m[i][j] = at(i, j);
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < dim_; ++c) {
    std::size_t pr = c;
    while (pr < dim_ && m[pr][c] == 0) ++pr;
    if (pr == dim_) return 0;
    if (pr != c) {
      std::swap(m[pr], m[c]);
      det = (q_ - det) % q_;
    }
    det = det * m[c][c] % q_;
    std::uint32_t inv = mod_inverse(m[c][c], q_);
    for (std::size_t i = c + 1; i < dim_; ++i) {
      std::uint32_t f = m[i][c] * inv % q_;
      for (std::size_t k = c; k < dim_; ++k) m[i][k] = (m[i][k] + (q_ - f) * m[c][k]) % q_;
    }
  }
  return static_cast<std::uint32_t>(det);
}

std::string FqMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < dim_; ++i) {
    out << (i ? "; " : "");
    for (std::size_t j = 0; j < dim_; ++j) out << (j ? " " : "") << static_cast<unsigned>(at(i, j));
  }
  out << ']';
  return out.str();
}

}  // namespace finperf
