#pragma once

#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "det.hpp"
#include "matrix.hpp"

namespace mdet {

inline constexpr i64 kLaplaceDimensionLimit = 12;

namespace detail {

inline Int laplace_expand(const DenseMatrix& m, std::vector<i64>& rows, std::vector<i64>& cols) {
  if (rows.empty()) return Int(1);  // empty product
  // expand along the remaining row with the fewest nonzeros
  std::size_t best = 0;
  int best_nz = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    int nz = 0;
    for (i64 c : cols)
      if (m.at(rows[i], c) != 0) ++nz;
    if (nz < best_nz) {
      best_nz = nz;
      best = i;
    }
  }
  if (best_nz == 0) return Int(0);  // zero row
  const i64 r = rows[best];
  rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
  Int acc = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Int& v = m.at(r, cols[j]);
    if (v == 0) continue;
    const i64 c = cols[j];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(j));
    const Int sub = laplace_expand(m, rows, cols);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(j), c);
    if ((best + j) % 2 == 0)
      acc += v * sub;
    else
      acc -= v * sub;
  }
  rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(best), r);
  return acc;
}

}  // namespace detail

// brute-force cofactor oracle, guarded against factorial blowup
inline DetResult det_laplace(const DenseMatrix& m) {
  if (m.n > kLaplaceDimensionLimit)
    throw std::invalid_argument("det_laplace: dimension " + std::to_string(m.n) +
                                " exceeds the limit of " +
                                std::to_string(kLaplaceDimensionLimit));
  std::vector<i64> rows(static_cast<std::size_t>(m.n));
  std::vector<i64> cols(static_cast<std::size_t>(m.n));
  std::iota(rows.begin(), rows.end(), i64{1});
  std::iota(cols.begin(), cols.end(), i64{1});
  return {detail::laplace_expand(m, rows, cols), Engine::laplace, Certification::certified, {}};
}

}  // namespace mdet
