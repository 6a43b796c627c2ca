#include "finperf/zmod.hpp"

#include <cmath>
#include <numeric>

#include "finperf/arith.hpp"
#include "finperf/error.hpp"

namespace finperf {

namespace {

// A unit u with u * a = gcd(a, m) (mod m).
std::uint32_t normalizing_unit(std::uint32_t a, std::uint32_t m) {
  std::int64_t s = 0, t = 0;
  auto g = static_cast<std::uint32_t>(ext_gcd(a, m, s, t));
  std::uint32_t const step = m / g;
  std::uint32_t u = mod_reduce(s, m);
  // s is determined modulo m / g; some lift of it is a unit mod m.
  for (std::uint32_t k = 0; k < g; ++k) {
    std::uint32_t cand = static_cast<std::uint32_t>((u + static_cast<std::uint64_t>(k) * step) % m);
    if (std::gcd(cand, m) == 1) return cand;
  }
  throw Error("no normalizing unit found");  // unreachable for a valid gcd
}

void axpy(ZmodRow& y, std::uint64_t c, ZmodRow const& x, std::uint32_t m) {
  if (c % m == 0) return;
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = static_cast<std::uint32_t>((y[k] + c * x[k]) % m);
}

bool is_zero(ZmodRow const& r) {
  for (auto x : r)
    if (x) return false;
  return true;
}

}  // namespace

ZmodRowSpan::ZmodRowSpan(std::uint32_t m, std::size_t ncols) : m_(m), ncols_(ncols) {
  if (m == 0) throw ParameterError("modulus must be positive");
}

void ZmodRowSpan::assign(std::vector<ZmodRow> rows) {
  rows_.clear();
  pivot_col_.clear();
  for (auto& r : rows) {
    if (r.size() != ncols_) throw ParameterError("row length mismatch");
    for (auto& x : r) x %= m_;
  }
  std::erase_if(rows, is_zero);
  for (std::size_t c = 0; c < ncols_ && !rows.empty(); ++c) {
    // Fold every row with a nonzero entry in column c into one pivot row.
    std::size_t piv = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      if (piv == rows.size()) {
        piv = i;
        continue;
      }
      // Unimodular 2x2 transform [s t; -b/g a/g] on (pivot, row i).
      std::int64_t s = 0, t = 0;
      std::int64_t a = rows[piv][c], b = rows[i][c];
      std::int64_t g = ext_gcd(a, b, s, t);
      ZmodRow p = rows[piv], r = rows[i];
      ZmodRow np(ncols_, 0), nr(ncols_, 0);
      axpy(np, mod_reduce(s, m_), p, m_);
      axpy(np, mod_reduce(t, m_), r, m_);
      axpy(nr, mod_reduce(-b / g, m_), p, m_);
      axpy(nr, mod_reduce(a / g, m_), r, m_);
      rows[piv] = std::move(np);
      rows[i] = std::move(nr);
    }
    if (piv == rows.size()) continue;
    ZmodRow p = std::move(rows[piv]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(piv));
    ZmodRow scaled(ncols_, 0);
    axpy(scaled, normalizing_unit(p[c], m_), p, m_);
    p = std::move(scaled);
    std::uint32_t const g = p[c];
    if (g == 0) continue;
    // The annihilator multiple clears column c but may carry later columns.
    ZmodRow extra(ncols_, 0);
    axpy(extra, m_ / g, p, m_);
    if (!is_zero(extra)) rows.push_back(std::move(extra));
    std::erase_if(rows, is_zero);
    rows_.push_back(std::move(p));
    pivot_col_.push_back(c);
  }
  // Reduce entries above each pivot so the form is canonical.
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::size_t c = pivot_col_[i];
    std::uint32_t g = rows_[i][c];
    for (std::size_t j = 0; j < i; ++j) {
      std::uint32_t f = rows_[j][c] / g;
      if (f) axpy(rows_[j], m_ - f, rows_[i], m_);
    }
  }
}

bool ZmodRowSpan::contains(ZmodRow const& x) const {
  if (x.size() != ncols_) throw ParameterError("row length mismatch");
  ZmodRow r = x;
  for (auto& v : r) v %= m_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::size_t c = pivot_col_[i];
    std::uint32_t g = rows_[i][c];
    if (r[c] % g != 0) return false;
    axpy(r, m_ - r[c] / g, rows_[i], m_);
  }
  return is_zero(r);
}

long double ZmodRowSpan::size() const {
  long double s = 1;
  for (std::size_t i = 0; i < rows_.size(); ++i) s *= static_cast<long double>(m_ / rows_[i][pivot_col_[i]]);
  return s;
}

std::uint32_t determinant_mod(std::vector<std::vector<std::int64_t>> a, std::uint32_t m) {
  std::size_t const n = a.size();
  if (n == 0) return 1 % m;
  auto& b = a;
  int sign = 1;
  std::int64_t prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (b[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && b[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(b[k], b[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) b[i][j] = (b[i][j] * b[k][k] - b[i][k] * b[k][j]) / prev;
    prev = b[k][k];
  }
  std::int64_t det = b[n - 1][n - 1] * sign;
  std::int64_t r = det % static_cast<std::int64_t>(m);
  return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

}  // namespace finperf
