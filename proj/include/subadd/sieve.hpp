#pragma once

// Segmented sieve of Eratosthenes over odd integers. 2 is handled
// specially everywhere; only odd numbers carry flags.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "subadd/common.hpp"

namespace subadd {

inline u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while (r + 1 <= n / (r + 1)) ++r;
  return r;
}

// All primes <= limit by a plain odd-only sieve. Meant for base primes,
// so keep limit near sqrt of the target range.
inline std::vector<u64> simple_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  if (limit < 3) return primes;
  const u64 n_odd = (limit - 1) / 2;  // index i <-> value 2i+3
  std::vector<u64> composite((n_odd + 63) / 64, 0);
  for (u64 i = 0;; ++i) {
    u64 p = 2 * i + 3;
    if (p * p > limit) break;
    if (composite[i >> 6] >> (i & 63) & 1) continue;
    for (u64 j = (p * p - 3) / 2; j < n_odd; j += p)
      composite[j >> 6] |= u64(1) << (j & 63);
  }
  for (u64 i = 0; i < n_odd; ++i)
    if (!(composite[i >> 6] >> (i & 63) & 1)) primes.push_back(2 * i + 3);
  return primes;
}

// Primality window for the odd integers in [lo, hi). After
// sieve_segment() a set flag means the value has no prime divisor
// <= sqrt(hi) among the supplied base primes.
struct SieveSegment {
  u64 lo = 0;  // odd
  u64 hi = 0;
  std::vector<u64> words;

  u64 flag_count() const { return lo < hi ? (hi - lo + 1) / 2 : 0; }
  bool flagged(u64 v) const {
    u64 i = (v - lo) / 2;
    return words[i >> 6] >> (i & 63) & 1;
  }
};

// base_primes must contain every prime <= sqrt(hi - 1), ascending.
inline SieveSegment sieve_segment(u64 lo, u64 hi,
                                  const std::vector<u64>& base_primes) {
  SieveSegment seg;
  seg.lo = lo | 1;
  seg.hi = hi;
  if (seg.lo >= hi) return seg;
  const u64 n = (hi - seg.lo + 1) / 2;
  seg.words.assign((n + 63) / 64, ~u64(0));
  if (n % 64) seg.words.back() = (u64(1) << (n % 64)) - 1;
  for (u64 p : base_primes) {
    if (p == 2) continue;
    if (p * p >= hi) break;
    u64 start = p * p;
    if (start < seg.lo) {
      u64 k = (seg.lo + p - 1) / p;
      if ((k & 1) == 0) ++k;
      start = k * p;
    }
    for (u64 v = start; v < hi; v += 2 * p) {
      u64 i = (v - seg.lo) / 2;
      seg.words[i >> 6] &= ~(u64(1) << (i & 63));
    }
  }
  if (seg.lo == 1) seg.words[0] &= ~u64(1);  // 1 is not prime
  return seg;
}

// Primes in [lo, hi), ascending, without any precomputed table.
inline std::vector<u64> primes_in(u64 lo, u64 hi) {
  if (lo < 2 || lo > hi)
    throw std::domain_error("primes_in: need 2 <= lo <= hi");
  std::vector<u64> out;
  if (hi <= 2) return out;
  if (lo <= 2) out.push_back(2);
  const u64 first = std::max<u64>(lo, 3) | 1;
  if (first >= hi) return out;
  const std::vector<u64> base = simple_primes(isqrt(hi - 1));
  const u64 span = u64(1) << 19;
  for (u64 a = first; a < hi; a += span) {
    const u64 b = std::min(hi, a + span);
    SieveSegment seg = sieve_segment(a, b, base);
    for (u64 v = seg.lo; v < b; v += 2)
      if (seg.flagged(v)) out.push_back(v);
  }
  return out;
}

}  // namespace subadd
