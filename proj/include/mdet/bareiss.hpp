#pragma once

#include <utility>

#include "det.hpp"
#include "matrix.hpp"

namespace mdet {

// Fraction-free elimination over exact integers; every interior division is
// exact. Pivot: first nonzero at or below the diagonal, swaps tracked in the
// sign. Exits with 0 as soon as a pivot column is all zero.
inline DetResult det_bareiss(DenseMatrix m) {
  const i64 n = m.n;
  Int* a = m.a.data();
  int sign = 1;
  Int prev = 1;
  for (i64 k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      i64 swap_row = -1;
      for (i64 i = k + 1; i < n; ++i)
        if (a[i * n + k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0)
        return {Int(0), Engine::bareiss, Certification::certified, {}};
      for (i64 j = k; j < n; ++j) std::swap(a[k * n + j], a[swap_row * n + j]);
      sign = -sign;
    }
    const Int& piv = a[k * n + k];
    for (i64 i = k + 1; i < n; ++i) {
      Int* ri = a + i * n;
      const Int* rk = a + k * n;
      const Int& f = ri[k];
      for (i64 j = k + 1; j < n; ++j) ri[j] = (ri[j] * piv - f * rk[j]) / prev;
      ri[k] = 0;
    }
    prev = a[k * n + k];
  }
  Int det = n == 0 ? Int(1) : a[(n - 1) * n + (n - 1)];
  if (sign < 0) det = -det;
  return {std::move(det), Engine::bareiss, Certification::certified, {}};
}

}  // namespace mdet
