#pragma once

// Exact prime counting: counts[t] = pi(t) for every 0 <= t <= limit,
// stored as dense 32-bit entries. Construction is a segmented sieve
// that may fan out across workers; the published table is immutable
// and safe for unrestricted concurrent reads.

#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "subadd/common.hpp"
#include "subadd/sieve.hpp"

namespace subadd {

struct SieveOptions {
  u64 segment_flags = u64(1) << 18;  // odd flags per segment, cache-sized
  unsigned workers = 1;
  u64 memory_budget = default_memory_budget();
};

class PrimeTable {
 public:
  // counts entries are 32-bit wide, so the addressable domain tops out
  // below 2^32.
  static constexpr u64 max_limit = 0xFFFFFFFFull;

  static PrimeTable build(u64 limit, const SieveOptions& opt = {}) {
    if (limit < 2) throw std::domain_error("PrimeTable: limit must be >= 2");
    if (limit > max_limit)
      throw std::domain_error("PrimeTable: limit exceeds the 32-bit count width");
    const u64 span = 2 * std::max<u64>(opt.segment_flags, u64(1) << 12);
    const u64 root = isqrt(limit);
    const unsigned workers = std::max(1u, opt.workers);
    // Estimate before any large allocation.
    const u64 estimate = (limit + 1) * sizeof(u32) + root * 9 +
                         u64(workers) * (span / 16) + (u64(1) << 16);
    if (estimate > opt.memory_budget)
      throw resource_error(
          "PrimeTable: estimated " + std::to_string(estimate) +
          " bytes exceeds memory budget of " + std::to_string(opt.memory_budget));

    PrimeTable t;
    t.limit_ = limit;
    t.counts_.assign(limit + 1, 0);
    t.counts_[2] = 1;
    if (limit >= 3) {
      const std::vector<u64> base = simple_primes(root);
      const u64 first = 3;
      const u64 n_blocks = (limit + 1 - first + span - 1) / span;
      for_each_block(n_blocks, workers, [&](u64 b) {
        const u64 lo = first + b * span;
        const u64 hi = std::min(limit + 1, lo + span);
        SieveSegment seg = sieve_segment(lo, hi, base);
        for (u64 v = seg.lo; v < hi; v += 2)
          if (seg.flagged(v)) t.counts_[v] = 1;
      });
      u32 acc = 1;  // pi(2)
      for (u64 v = 3; v <= limit; ++v) {
        acc += t.counts_[v];
        t.counts_[v] = acc;
      }
    }
    return t;
  }

  u64 limit() const { return limit_; }

  // Exact count of primes <= t, O(1).
  u64 pi(u64 t) const {
    if (t > limit_) throw std::out_of_range("pi: t exceeds the table limit");
    return counts_[t];
  }

  bool is_prime(u64 t) const {
    if (t > limit_) throw std::out_of_range("is_prime: t exceeds the table limit");
    return t >= 2 && counts_[t] != counts_[t - 1];
  }

  // Primes p with lo <= p < hi, ascending, read off the count steps.
  std::vector<u64> primes_in(u64 lo, u64 hi) const {
    if (lo < 2 || lo > hi)
      throw std::domain_error("primes_in: need 2 <= lo <= hi");
    if (hi > limit_ + 1)
      throw std::out_of_range("primes_in: window exceeds the table limit");
    std::vector<u64> out;
    for (u64 v = lo; v < hi; ++v)
      if (counts_[v] != counts_[v - 1]) out.push_back(v);
    return out;
  }

  // Count of primes p <= t with p = a (mod q). A linear filtered scan by
  // design: the residue-class hook stays memory-free.
  u64 pi_ap(u64 t, u64 q, u64 a) const {
    if (q < 2) throw std::domain_error("pi_ap: q must be >= 2");
    if (std::gcd(a, q) != 1)
      throw std::domain_error("pi_ap: a and q must be coprime");
    if (t > limit_) throw std::out_of_range("pi_ap: t exceeds the table limit");
    const u64 res = a % q;
    u64 n = 0;
    for (u64 v = 2; v <= t; ++v)
      if (counts_[v] != counts_[v - 1] && v % q == res) ++n;
    return n;
  }

  const std::vector<u32>& counts() const { return counts_; }

  // Binary cache: magic, version, limit, then raw little-endian entries.
  void save(const std::string& path) const {
    static_assert(std::endian::native == std::endian::little,
                  "cache format is little-endian");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("PrimeTable: cannot open " + path);
    const u32 version = 1, reserved = 0;
    f.write(kMagic, 8);
    f.write(reinterpret_cast<const char*>(&version), sizeof version);
    f.write(reinterpret_cast<const char*>(&reserved), sizeof reserved);
    f.write(reinterpret_cast<const char*>(&limit_), sizeof limit_);
    f.write(reinterpret_cast<const char*>(counts_.data()),
            std::streamsize(counts_.size() * sizeof(u32)));
    if (!f) throw std::runtime_error("PrimeTable: write failed for " + path);
  }

  // Re-validates counts[2] and re-derives counts[limit] from a fresh
  // sieve of the top segment before accepting the cache.
  static PrimeTable load(const std::string& path,
                         u64 memory_budget = default_memory_budget()) {
    static_assert(std::endian::native == std::endian::little,
                  "cache format is little-endian");
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("PrimeTable: cannot open " + path);
    char magic[8] = {};
    u32 version = 0, reserved = 0;
    u64 limit = 0;
    f.read(magic, 8);
    f.read(reinterpret_cast<char*>(&version), sizeof version);
    f.read(reinterpret_cast<char*>(&reserved), sizeof reserved);
    f.read(reinterpret_cast<char*>(&limit), sizeof limit);
    if (!f || std::memcmp(magic, kMagic, 8) != 0 || version != 1)
      throw std::runtime_error("PrimeTable: bad cache header in " + path);
    if (limit < 2 || limit > max_limit)
      throw std::runtime_error("PrimeTable: cache limit out of range in " + path);
    if ((limit + 1) * sizeof(u32) + (u64(1) << 16) > memory_budget)
      throw resource_error("PrimeTable: cached table exceeds memory budget");
    PrimeTable t;
    t.limit_ = limit;
    t.counts_.resize(limit + 1);
    f.read(reinterpret_cast<char*>(t.counts_.data()),
           std::streamsize(t.counts_.size() * sizeof(u32)));
    if (!f) throw std::runtime_error("PrimeTable: truncated cache " + path);
    if (t.counts_[0] != 0 || t.counts_[1] != 0 || t.counts_[2] != 1)
      throw std::runtime_error("PrimeTable: cache failed the counts[2] check");
    // Spot re-sieve of the top segment.
    const u64 span = u64(1) << 19;
    u64 lo = limit + 1 > span ? limit + 1 - span : 3;
    if (lo < 3) lo = 3;
    SieveSegment seg = sieve_segment(lo, limit + 1, simple_primes(isqrt(limit)));
    u64 in_segment = 0;
    for (u64 v = seg.lo; v <= limit; v += 2)
      if (seg.flagged(v)) ++in_segment;
    const u64 base_count = seg.lo >= 1 ? t.counts_[seg.lo - 1] : 0;
    if (t.counts_[limit] != base_count + in_segment)
      throw std::runtime_error("PrimeTable: cache failed the top-segment re-sieve");
    return t;
  }

 private:
  static constexpr char kMagic[8] = {'S', 'U', 'B', 'A', 'D', 'D', 'P', 'T'};

  u64 limit_ = 0;
  std::vector<u32> counts_;
};

}  // namespace subadd
