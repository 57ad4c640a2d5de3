#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bareiss.hpp"
#include "matrix.hpp"

namespace mdet {

// all 2d signed cofactors along one row of M(d); the raw data stream a
// pattern-guessing determinant proof consumes
struct CofactorProfile {
  i64 d = 0;
  i64 row = 0;
  std::vector<Int> cofactors;  // C_1 .. C_2d
};

namespace detail {

inline DenseMatrix dense_minor(const DenseMatrix& m, i64 skip_row, i64 skip_col) {
  DenseMatrix out(m.n - 1);
  i64 ri = 1;
  for (i64 r = 1; r <= m.n; ++r) {
    if (r == skip_row) continue;
    i64 ci = 1;
    for (i64 c = 1; c <= m.n; ++c) {
      if (c == skip_col) continue;
      out.at(ri, ci) = m.at(r, c);
      ++ci;
    }
    ++ri;
  }
  return out;
}

}  // namespace detail

// C_j = (-1)^{row+j} det(M(d) with the row and column j removed), computed
// with the certified Bareiss engine so profiles stay practical around d ~ 100
inline CofactorProfile cofactor_profile(i64 d, i64 row) {
  if (d < 1) throw std::invalid_argument("cofactor_profile: d must be >= 1");
  const i64 n = 2 * d;
  if (row < 1 || row > n)
    throw std::out_of_range("cofactor_profile: row outside [1, 2d]");
  const DenseMatrix m = to_dense(build_m(d));
  CofactorProfile prof{d, row, {}};
  prof.cofactors.reserve(static_cast<std::size_t>(n));
  for (i64 j = 1; j <= n; ++j) {
    Int c = det_bareiss(detail::dense_minor(m, row, j)).value;
    if ((row + j) % 2 != 0) c = -c;
    prof.cofactors.push_back(std::move(c));
  }
  return prof;
}

// determinants of the leading k x k blocks of M(d), k = 1 .. 2d
inline std::vector<Int> principal_minors(i64 d) {
  if (d < 1) throw std::invalid_argument("principal_minors: d must be >= 1");
  const DenseMatrix m = to_dense(build_m(d));
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(2 * d));
  for (i64 k = 1; k <= 2 * d; ++k) {
    DenseMatrix lead(k);
    for (i64 r = 1; r <= k; ++r)
      for (i64 c = 1; c <= k; ++c) lead.at(r, c) = m.at(r, c);
    out.push_back(det_bareiss(std::move(lead)).value);
  }
  return out;
}

// header "# d=<d> row=<row>", then one "j C_j" line per column
inline void write_cofactor_profile(const CofactorProfile& prof, std::ostream& os) {
  os << "# d=" << prof.d << " row=" << prof.row << "\n";
  for (std::size_t j = 0; j < prof.cofactors.size(); ++j)
    os << (j + 1) << " " << prof.cofactors[j] << "\n";
}

}  // namespace mdet
