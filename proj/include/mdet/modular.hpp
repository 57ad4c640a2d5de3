#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "primes.hpp"

namespace mdet {

// det(m) mod p by Gaussian elimination over the field of p elements, in
// machine words. p must be prime (the prime sources here guarantee it) and
// below 2^62 so products stay inside 128-bit intermediates. A singular input
// legitimately yields residue 0.
inline u64 det_mod_p(const SparseColMatrix& m, u64 p) {
  if (p < 2) throw std::invalid_argument("det_mod_p: modulus must be >= 2");
  if (p >= kPrimeWindowHi) throw std::invalid_argument("det_mod_p: modulus must be < 2^62");
  const i64 n = m.n;
  std::vector<u64> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (i64 c = 1; c <= n; ++c)
    for (const auto& e : m.column(c))
      a[static_cast<std::size_t>((e.row - 1) * n + (c - 1))] = e.value > 0 ? 1 : p - 1;

  int sign = 1;
  u64 det = 1 % p;
  for (i64 k = 0; k < n; ++k) {
    i64 pivot = -1;
    for (i64 i = k; i < n; ++i)
      if (a[i * n + k] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != k) {
      for (i64 j = k; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
      sign = -sign;
    }
    const u64 pk = a[k * n + k];
    det = mulmod(det, pk, p);
    const u64 inv = powmod(pk, p - 2, p);
    const u64* rk = &a[static_cast<std::size_t>(k * n)];
    for (i64 i = k + 1; i < n; ++i) {
      u64* ri = &a[static_cast<std::size_t>(i * n)];
      if (ri[k] == 0) continue;
      const u64 neg_q = p - mulmod(ri[k], inv, p);
      for (i64 j = k; j < n; ++j)
        ri[j] = static_cast<u64>((ri[j] + static_cast<unsigned __int128>(neg_q) * rk[j]) % p);
    }
  }
  if (sign < 0 && det != 0) det = p - det;
  return det;
}

}  // namespace mdet
