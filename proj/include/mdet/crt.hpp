#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "det.hpp"
#include "matrix.hpp"
#include "modular.hpp"
#include "primes.hpp"

namespace mdet {

// floor of the product of Euclidean column norms, an upper bound on |det|.
// Entries are +-1, so each column's squared norm is its nonzero count.
inline Int hadamard_bound(const SparseColMatrix& m) {
  Int prod = 1;
  for (const auto& col : m.cols) prod *= static_cast<i64>(col.size());
  return isqrt(prod);
}

struct CrtMode {
  Certification target = Certification::certified;
  int k = 5;     // prime count, probabilistic mode only
  u64 seed = 0;  // prime sampling seed, probabilistic mode only

  static CrtMode certified() { return {Certification::certified, 0, 0}; }
  static CrtMode probabilistic(int k, u64 seed) {
    return {Certification::probabilistic, k, seed};
  }
};

namespace detail {

// fold one residue into the running CRT solution x mod modulus
inline void crt_accumulate(Int& x, Int& modulus, u64 p, u64 r) {
  if (modulus == 1) {
    x = r;
    modulus = p;
    return;
  }
  const u64 m_mod_p = static_cast<u64>(modulus % p);
  const u64 x_mod_p = static_cast<u64>(x % p);
  const u64 delta = (r + p - x_mod_p) % p;
  const u64 inv = powmod(m_mod_p, p - 2, p);  // gcd(modulus, p) = 1
  x += modulus * Int(mulmod(delta, inv, p));
  modulus *= p;
}

}  // namespace detail

// Exact determinant from modular residues. Certified mode accumulates
// distinct primes until the CRT modulus exceeds 2H+1 (H the Hadamard bound),
// which pins the value uniquely in the symmetric range [-H, H]. Probabilistic
// mode uses k seeded primes from [2^60, 2^62); it still earns the certified
// label if the accumulated modulus happens to exceed twice the bound.
inline DetResult det_crt(const SparseColMatrix& m, const CrtMode& mode) {
  const Int bound = hadamard_bound(m);
  std::vector<PrimeResidue> trace;
  Int x = 0;
  Int modulus = 1;
  if (mode.target == Certification::certified) {
    const Int stop_at = 2 * bound + 1;
    for (std::size_t i = 0; modulus <= stop_at; ++i) {
      const u64 p = certified_prime(i);
      const u64 r = det_mod_p(m, p);
      detail::crt_accumulate(x, modulus, p, r);
      trace.push_back({p, r});
    }
  } else {
    for (u64 p : sample_primes(mode.k, mode.seed)) {
      const u64 r = det_mod_p(m, p);
      detail::crt_accumulate(x, modulus, p, r);
      trace.push_back({p, r});
    }
  }
  Int value = x > (modulus - 1) / 2 ? Int(x - modulus) : x;
  const Certification cert =
      modulus > 2 * bound ? Certification::certified : Certification::probabilistic;
  return {std::move(value), Engine::modular_crt, cert, std::move(trace)};
}

}  // namespace mdet
