#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <mutex>
#include <random>
#include <stdexcept>
#include <vector>

#include "bigint.hpp"

namespace mdet {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// deterministic Miller-Rabin; the 12-base set decides primality for all u64
inline bool is_prime(u64 n) {
  constexpr u64 bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (u64 p : bases)
    if (n % p == 0) return n == p;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Prime window for modular elimination: two residues multiply inside 128 bits
// with room for an additive carry.
inline constexpr u64 kPrimeWindowLo = u64(1) << 60;
inline constexpr u64 kPrimeWindowHi = u64(1) << 62;

// Fixed descending sequence of primes below 2^62, shared by all certified
// runs; lazily extended under a lock.
inline u64 certified_prime(std::size_t index) {
  static std::vector<u64> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= index) {
    u64 next = cache.empty() ? kPrimeWindowHi - 1 : cache.back() - 2;
    while (!is_prime(next)) next -= 2;
    cache.push_back(next);
  }
  return cache[index];
}

inline u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// k distinct primes sampled uniformly from [2^60, 2^62), deterministic in the
// seed (and identical across platforms: mt19937_64 plus explicit rejection)
inline std::vector<u64> sample_primes(int k, u64 seed) {
  if (k < 1) throw std::invalid_argument("sample_primes: k must be >= 1");
  std::mt19937_64 rng(seed);
  const u64 span = kPrimeWindowHi - kPrimeWindowLo;
  std::vector<u64> out;
  out.reserve(static_cast<std::size_t>(k));
  while (out.size() < static_cast<std::size_t>(k)) {
    u64 r;
    do {
      r = rng() >> 2;  // uniform 62-bit draw
    } while (r >= span);
    u64 candidate = (kPrimeWindowLo + r) | 1;
    while (!is_prime(candidate)) candidate += 2;
    if (candidate >= kPrimeWindowHi) continue;
    if (std::find(out.begin(), out.end(), candidate) != out.end()) continue;
    out.push_back(candidate);
  }
  return out;
}

}  // namespace mdet
