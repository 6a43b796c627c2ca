#pragma once

// Row spans over Z/mZ for composite m.
//
// Rows are kept in Howell form: echelon rows whose pivots divide m, closed
// under the (m / pivot) multiples, so membership is decided by plain
// reduction.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace finperf {

using ZmodRow = std::vector<std::uint32_t>;

class ZmodRowSpan {
 public:
  ZmodRowSpan(std::uint32_t m, std::size_t ncols);

  // Rebuilds the form from the given generators.
  void assign(std::vector<ZmodRow> rows);

  std::uint32_t modulus() const noexcept { return m_; }
  std::size_t ncols() const noexcept { return ncols_; }
  std::vector<ZmodRow> const& rows() const noexcept { return rows_; }

  bool contains(ZmodRow const& x) const;
  // Number of elements of the span.
  long double size() const;

 private:
  std::uint32_t m_;
  std::size_t ncols_;
  std::vector<ZmodRow> rows_;
  std::vector<std::size_t> pivot_col_;
};

// Determinant of an integer matrix reduced mod m. Fraction-free elimination
// over Z; intended for small matrices with small entries.
std::uint32_t determinant_mod(std::vector<std::vector<std::int64_t>> a, std::uint32_t m);

}  // namespace finperf
