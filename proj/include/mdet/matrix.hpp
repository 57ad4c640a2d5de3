#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigint.hpp"

namespace mdet {

// 1-based address (d, row, col) into the 2d x 2d family matrix
struct EntryAddress {
  i64 d = 1;
  i64 row = 1;
  i64 col = 1;
};

// Entry rule of the family. Odd column c = 2b-1 carries +1 at row 2b and -1
// at row 3b+1; even column c = 2b carries +1 at row 2b-1 and -1 at row b-1.
// A target row outside [1, 2d] never matches, so the entry is 0 there.
inline int entry(const EntryAddress& addr) {
  if (addr.d < 1) throw std::invalid_argument("entry: d must be >= 1");
  const i64 n = 2 * addr.d;
  if (addr.row < 1 || addr.row > n || addr.col < 1 || addr.col > n)
    throw std::out_of_range("entry: row/col outside [1, 2d]");
  const i64 a = addr.row;
  if (addr.col % 2 != 0) {
    const i64 b = (addr.col + 1) / 2;
    if (a == 2 * b) return 1;
    if (a == 3 * b + 1) return -1;
  } else {
    const i64 b = addr.col / 2;
    if (a == 2 * b - 1) return 1;
    if (a == b - 1) return -1;
  }
  return 0;
}

struct SparseEntry {
  i64 row = 0;    // 1-based
  int value = 0;  // -1 or +1
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Column-major sparse matrix over {-1, 0, +1}. Zeros are not stored; each
// column keeps its entries sorted by row, no duplicate rows.
struct SparseColMatrix {
  i64 n = 0;
  std::vector<std::vector<SparseEntry>> cols;  // cols[c-1]

  SparseColMatrix() = default;
  explicit SparseColMatrix(i64 dim) : n(dim) {
    if (dim < 0) throw std::invalid_argument("matrix dimension must be >= 0");
    cols.resize(static_cast<std::size_t>(dim));
  }

  const std::vector<SparseEntry>& column(i64 c) const {
    return cols[static_cast<std::size_t>(c - 1)];
  }
  std::vector<SparseEntry>& column(i64 c) {
    return cols[static_cast<std::size_t>(c - 1)];
  }

  i64 nonzeros() const {
    i64 total = 0;
    for (const auto& col : cols) total += static_cast<i64>(col.size());
    return total;
  }

  friend bool operator==(const SparseColMatrix&, const SparseColMatrix&) = default;
};

// throws std::invalid_argument on out-of-range rows, unsorted or duplicate
// rows within a column, or values other than -1/+1
inline void validate(const SparseColMatrix& m) {
  if (static_cast<i64>(m.cols.size()) != m.n)
    throw std::invalid_argument("sparse matrix: column count does not match dimension");
  for (i64 c = 1; c <= m.n; ++c) {
    i64 last_row = 0;
    for (const auto& e : m.column(c)) {
      if (e.row < 1 || e.row > m.n)
        throw std::invalid_argument("sparse matrix: row index outside [1, n] in column " +
                                    std::to_string(c));
      if (e.row <= last_row)
        throw std::invalid_argument("sparse matrix: rows not strictly increasing in column " +
                                    std::to_string(c));
      if (e.value != 1 && e.value != -1)
        throw std::invalid_argument("sparse matrix: value outside {-1, +1} in column " +
                                    std::to_string(c));
      last_row = e.row;
    }
  }
}

// materializes the 2d x 2d family matrix from the entry rule
inline SparseColMatrix build_m(i64 d) {
  if (d < 1) throw std::invalid_argument("build_m: d must be >= 1");
  const i64 n = 2 * d;
  SparseColMatrix m(n);
  for (i64 b = 1; b <= d; ++b) {
    auto& odd = m.column(2 * b - 1);  // rows 2b < 3b+1, already sorted
    odd.push_back({2 * b, +1});
    if (3 * b + 1 <= n) odd.push_back({3 * b + 1, -1});
    auto& even = m.column(2 * b);  // rows b-1 < 2b-1
    if (b >= 2) even.push_back({b - 1, -1});
    even.push_back({2 * b - 1, +1});
  }
  return m;
}

// dense exact-integer form, row-major storage, 1-based accessors
struct DenseMatrix {
  i64 n = 0;
  std::vector<Int> a;

  DenseMatrix() = default;
  explicit DenseMatrix(i64 dim) : n(dim) {
    if (dim < 0) throw std::invalid_argument("matrix dimension must be >= 0");
    a.resize(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
  }

  Int& at(i64 row, i64 col) {
    return a[static_cast<std::size_t>((row - 1) * n + (col - 1))];
  }
  const Int& at(i64 row, i64 col) const {
    return a[static_cast<std::size_t>((row - 1) * n + (col - 1))];
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

inline DenseMatrix to_dense(const SparseColMatrix& m) {
  DenseMatrix out(m.n);
  for (i64 c = 1; c <= m.n; ++c)
    for (const auto& e : m.column(c)) out.at(e.row, c) = e.value;
  return out;
}

// inverse of to_dense; rejects entries outside {-1, 0, +1}
inline SparseColMatrix to_sparse(const DenseMatrix& m) {
  SparseColMatrix out(m.n);
  for (i64 c = 1; c <= m.n; ++c)
    for (i64 r = 1; r <= m.n; ++r) {
      const Int& v = m.at(r, c);
      if (v == 0) continue;
      if (v != 1 && v != -1)
        throw std::invalid_argument("to_sparse: entry outside {-1, 0, +1}");
      out.column(c).push_back({r, v == 1 ? +1 : -1});
    }
  return out;
}

}  // namespace mdet
