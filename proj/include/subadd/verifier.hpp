#pragma once

// Exhaustive and reduced verification of
//   Delta(x,y) = pi(x) + pi(y) - pi(x+y) >= 0.
//
// Reduced candidate set, per sum s = x+y: only y = p-1 (p prime,
// y <= s/2) plus the boundary y = floor(s/2), and only sums s that are
// prime or the terminal s_max. Why that suffices: for fixed s,
// pi(y) + pi(s-y) is constant in y while pi(y) is, and pi(s-y) is
// nonincreasing, so each constancy interval attains its minimum at the
// right endpoint (y = nextprime - 1 or the boundary); for fixed y,
// Delta(s-y, y) only drops when s itself is prime. The reduction is not
// taken on faith: every s <= 1e4 is brute-forced and the per-s minima
// must agree exactly before the reduced set is trusted above that.
//
// All Delta arithmetic is exact integer arithmetic.

#include <algorithm>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "subadd/common.hpp"
#include "subadd/prime_table.hpp"
#include "subadd/thresholds.hpp"

namespace subadd {

struct DeltaSample {
  u64 x = 0, y = 0;
  i64 delta = 0;
};

struct VerificationReport {
  u64 s_min = 0, s_max = 0;
  u64 pairs_checked = 0;
  bool reduction_used = false;
  i64 min_delta = 0;
  u64 argmin_x = 0, argmin_y = 0;
  std::vector<DeltaSample> violations;  // delta < 0; expected empty
};

inline i64 delta(const PrimeTable& t, u64 x, u64 y) {
  if (x < 2 || y < 2) throw std::domain_error("delta: x and y must be >= 2");
  if (x + y > t.limit())
    throw std::out_of_range("delta: x + y exceeds the table limit");
  const auto& c = t.counts();
  return i64(c[x]) + i64(c[y]) - i64(c[x + y]);
}

namespace detail {

struct SumCandidates {
  std::vector<u32> y;     // p - 1, ascending
  std::vector<u32> pi_y;  // pi(p - 1) = pi(p) - 1
};

inline SumCandidates build_candidates(u64 s_max) {
  SumCandidates c;
  const std::vector<u64> ps = primes_in(3, s_max / 2 + 2);
  c.y.reserve(ps.size());
  c.pi_y.reserve(ps.size());
  u32 idx = 1;  // pi(2)
  for (u64 p : ps) {
    c.y.push_back(u32(p - 1));
    c.pi_y.push_back(idx++);
  }
  return c;
}

struct VerifyBlock {
  i64 min_delta = std::numeric_limits<i64>::max();
  u64 ax = 0, ay = 0;
  u64 pairs = 0;
  std::vector<DeltaSample> violations;

  void take(u64 x, u64 y, i64 d) {
    ++pairs;
    if (d < min_delta) {
      min_delta = d;
      ax = x;
      ay = y;
    }
    if (d < 0) violations.push_back({x, y, d});
  }
};

}  // namespace detail

// Checks Delta(x,y) >= 0 for all 2 <= y <= x with x + y <= s_max.
// With use_reduction, sums above 1e4 are restricted to the reduced
// candidate set after the brute-force gate passes (a mismatch there is
// an implementation bug and throws logic_error). Work is split into
// fixed s-blocks merged in order, so reports are identical for every
// worker count.
inline VerificationReport verify_exhaustive(const PrimeTable& table, u64 s_max,
                                            bool use_reduction,
                                            unsigned workers = 1) {
  if (s_max > table.limit())
    throw std::out_of_range("verify_exhaustive: s_max exceeds the table limit");
  VerificationReport rep;
  rep.s_max = s_max;
  rep.reduction_used = use_reduction;
  rep.min_delta = std::numeric_limits<i64>::max();
  if (s_max < 4) {
    rep.min_delta = 0;
    return rep;
  }
  rep.s_min = 4;

  const auto& c = table.counts();
  constexpr u64 gate_limit = 10000;
  detail::SumCandidates cand;
  if (use_reduction && s_max > gate_limit)
    cand = detail::build_candidates(s_max);

  const u64 first = 4;
  const u64 span = 4096;
  const u64 n_blocks = (s_max - first) / span + 1;
  std::vector<detail::VerifyBlock> blocks(n_blocks);

  for_each_block(n_blocks, workers, [&](u64 bi) {
    detail::VerifyBlock& blk = blocks[bi];
    const u64 lo = first + bi * span;
    const u64 hi = std::min(s_max, lo + span - 1);
    for (u64 s = lo; s <= hi; ++s) {
      const i64 pi_s = i64(c[s]);
      const u64 half = s / 2;
      if (!use_reduction || s <= gate_limit) {
        i64 brute_min = std::numeric_limits<i64>::max();
        i64 cand_min = brute_min;
        for (u64 y = 2; y <= half; ++y) {
          const i64 d = i64(c[y]) + i64(c[s - y]) - pi_s;
          blk.take(s - y, y, d);
          if (d < brute_min) brute_min = d;
          if (use_reduction && d < cand_min &&
              (y == half || c[y + 1] != c[y]))
            cand_min = d;
        }
        if (use_reduction && cand_min != brute_min)
          throw std::logic_error(
              "reduction gate mismatch at s = " + std::to_string(s));
      } else {
        if (c[s] == c[s - 1] && s != s_max) continue;  // composite, skip
        const auto end =
            std::upper_bound(cand.y.begin(), cand.y.end(), u32(half));
        const size_t n = size_t(end - cand.y.begin());
        for (size_t k = 0; k < n; ++k) {
          const u64 y = cand.y[k];
          const i64 d = i64(cand.pi_y[k]) + i64(c[s - y]) - pi_s;
          blk.take(s - y, y, d);
        }
        if (half >= 2) {
          const i64 d = i64(c[half]) + i64(c[s - half]) - pi_s;
          blk.take(s - half, half, d);
        }
      }
    }
  });

  for (const auto& b : blocks) {
    rep.pairs_checked += b.pairs;
    if (b.pairs && b.min_delta < rep.min_delta) {
      rep.min_delta = b.min_delta;
      rep.argmin_x = b.ax;
      rep.argmin_y = b.ay;
    }
    rep.violations.insert(rep.violations.end(), b.violations.begin(),
                          b.violations.end());
  }
  if (rep.pairs_checked == 0) rep.min_delta = 0;
  return rep;
}

// Checks Delta(x, y) >= 0 for y = y_lo, y_lo + stride, ... <= y_hi.
inline VerificationReport verify_range(const PrimeTable& table, u64 x,
                                       u64 y_lo, u64 y_hi, u64 stride = 1) {
  if (y_lo < 2 || y_lo > y_hi || y_hi > x)
    throw std::domain_error("verify_range: need 2 <= y_lo <= y_hi <= x");
  if (x + y_hi > table.limit())
    throw std::out_of_range("verify_range: x + y_hi exceeds the table limit");
  if (stride == 0) throw std::domain_error("verify_range: stride must be >= 1");
  VerificationReport rep;
  rep.s_min = x + y_lo;
  rep.s_max = x + y_hi;
  rep.min_delta = std::numeric_limits<i64>::max();
  const auto& c = table.counts();
  const i64 pi_x = i64(c[x]);
  detail::VerifyBlock blk;
  for (u64 y = y_lo; y <= y_hi; y += stride)
    blk.take(x, y, pi_x + i64(c[y]) - i64(c[x + y]));
  rep.pairs_checked = blk.pairs;
  rep.min_delta = blk.pairs ? blk.min_delta : 0;
  rep.argmin_x = blk.ax;
  rep.argmin_y = blk.ay;
  rep.violations = std::move(blk.violations);
  return rep;
}

struct MvReport {
  u64 checked = 0;
  u64 failures = 0;
  std::vector<DeltaSample> failing;  // delta = pi(x) + 2 pi(y) - pi(x+y)
};

// Montgomery-Vaughan: pi(x+y) <= pi(x) + 2 pi(y) for x >= 1, y >= 2.
// An unconditional theorem, so any failure means the sieve is broken.
inline MvReport mv_check(const PrimeTable& t,
                         std::span<const std::pair<u64, u64>> samples) {
  MvReport rep;
  for (const auto& [x, y] : samples) {
    if (x < 1 || y < 2)
      throw std::domain_error("mv_check: need x >= 1, y >= 2");
    if (x + y > t.limit())
      throw std::out_of_range("mv_check: x + y exceeds the table limit");
    const i64 slack = i64(t.pi(x)) + 2 * i64(t.pi(y)) - i64(t.pi(x + y));
    ++rep.checked;
    if (slack < 0) {
      ++rep.failures;
      rep.failing.push_back({x, y, slack});
    }
  }
  return rep;
}

struct ExceptionScan {
  u64 X = 0;
  Hypothesis hypothesis = Hypothesis::unconditional;
  u64 uncovered_pairs = 0;   // pairs with y below every applicable y_min
  u64 violating_pairs = 0;   // Delta < 0 among uncovered (exhaustive check)
  bool exhaustive = false;
  double bound_value = 0;    // exceptional-set shape: X R(2X) log^2 X / loglog X
                             // unconditionally, X^(3/2) log^2 X under RH
};

// Counts pairs (x, y), 2 <= y <= x <= X, that no proven range covers,
// and exhaustively checks Delta on them when feasible.
inline ExceptionScan scan_exceptions(const PrimeTable& table, u64 X,
                                     Hypothesis hyp,
                                     const BoundCatalog& cat = default_catalog(),
                                     bool check_uncovered = true,
                                     unsigned workers = 1,
                                     u64 check_cap = 100000000) {
  if (X < 2) throw std::domain_error("scan_exceptions: X must be >= 2");
  if (2 * X > table.limit())
    throw std::out_of_range("scan_exceptions: table must cover 2X");
  ExceptionScan out;
  out.X = X;
  out.hypothesis = hyp;

  // Largest uncovered y for this x (1 if everything from 2 up is covered).
  auto uncovered_top = [&](u64 x) -> u64 {
    const ThresholdResult b = best_ymin(x, hyp, cat);
    if (!b.valid) return x;
    const double first_covered = std::ceil(b.y_min);
    if (first_covered > double(x)) return x;
    const u64 fc = u64(first_covered);
    return fc >= 2 ? fc - 1 : 1;
  };

  const u64 span = 1024;
  const u64 n_blocks = (X - 2) / span + 1;
  std::vector<u64> uncovered(n_blocks, 0);
  for_each_block(n_blocks, workers, [&](u64 bi) {
    const u64 lo = 2 + bi * span;
    const u64 hi = std::min(X, lo + span - 1);
    u64 acc = 0;
    for (u64 x = lo; x <= hi; ++x) {
      const u64 top = std::min(uncovered_top(x), x);
      if (top >= 2) acc += top - 1;
    }
    uncovered[bi] = acc;
  });
  for (u64 v : uncovered) out.uncovered_pairs += v;

  if (check_uncovered) {
    if (out.uncovered_pairs > check_cap)
      throw resource_error(
          "scan_exceptions: uncovered set too large for the exhaustive check");
    std::vector<u64> viol(n_blocks, 0);
    const auto& c = table.counts();
    for_each_block(n_blocks, workers, [&](u64 bi) {
      const u64 lo = 2 + bi * span;
      const u64 hi = std::min(X, lo + span - 1);
      u64 acc = 0;
      for (u64 x = lo; x <= hi; ++x) {
        const u64 top = std::min(uncovered_top(x), x);
        const i64 pi_x = i64(c[x]);
        for (u64 y = 2; y <= top; ++y)
          if (pi_x + i64(c[y]) - i64(c[x + y]) < 0) ++acc;
      }
      viol[bi] = acc;
    });
    for (u64 v : viol) out.violating_pairs += v;
    out.exhaustive = true;
  }

  const double lX = std::log(double(X));
  if (hyp == Hypothesis::unconditional) {
    const BoundSpec& jy = cat.get(BoundId::jy_classical);
    out.bound_value =
        double(X) * r_eval(jy, 2.0 * double(X)) * lX * lX / std::log(lX);
  } else {
    out.bound_value = std::pow(double(X), 1.5) * lX * lX;
  }
  return out;
}

}  // namespace subadd
