#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "shared_tables.hpp"
#include "subadd/verifier.hpp"

using namespace subadd;

TEST_CASE("delta basics") {
  const auto& t = shared::table_1e6();
  CHECK(delta(t, 2, 2) == 0);  // pi(2)+pi(2)-pi(4) = 1+1-2
  CHECK_THROWS_AS(delta(t, 1, 2), std::domain_error);
  CHECK_THROWS_AS(delta(t, 2, 1), std::domain_error);
  CHECK_THROWS_AS(delta(t, 999999, 2), std::out_of_range);
}

TEST_CASE("delta is symmetric") {
  const auto& t = shared::table_1e6();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<u64> U(2, 400000);
  for (int i = 0; i < 500; ++i) {
    const u64 x = U(rng), y = U(rng);
    REQUIRE(delta(t, x, y) == delta(t, y, x));
  }
}

TEST_CASE("delta against the independent sieve oracle") {
  const auto& t = shared::table_1e6();
  const auto& o = shared::oracle_counts_1e6();
  auto oracle_delta = [&](u64 x, u64 y) {
    return i64(o[x]) + i64(o[y]) - i64(o[x + y]);
  };
  CHECK(delta(t, 100000, 1000) == oracle_delta(100000, 1000));
  CHECK(delta(t, 123456, 54321) == oracle_delta(123456, 54321));
  CHECK(delta(t, 2, 2) == oracle_delta(2, 2));
}

TEST_CASE("delta steps by at most one in each argument") {
  const auto& t = shared::table_1e6();
  const u64 y = 100;
  i64 prev = delta(t, 2, y);
  for (u64 x = 3; x <= 30000; ++x) {
    const i64 cur = delta(t, x, y);
    const i64 step = cur - prev;
    REQUIRE(step >= -1);
    REQUIRE(step <= 1);
    prev = cur;
  }
}

TEST_CASE("brute-force verification to 1e4 finds no violation") {
  const auto& t = shared::table_1e6();
  const VerificationReport rep = verify_exhaustive(t, 10000, false);
  CHECK(rep.violations.empty());
  CHECK(rep.min_delta == 0);
  CHECK(rep.argmin_x == 2);
  CHECK(rep.argmin_y == 2);
  CHECK_FALSE(rep.reduction_used);
  u64 expect_pairs = 0;
  for (u64 s = 4; s <= 10000; ++s) expect_pairs += s / 2 - 1;
  CHECK(rep.pairs_checked == expect_pairs);
}

TEST_CASE("reduced candidate minima equal brute-force minima per sum") {
  // independent re-derivation of the reduction: oracle primality, both
  // minima computed right here
  const auto& o = shared::oracle_counts_1e6();
  auto is_prime = [&](u64 v) { return o[v] != o[v - 1]; };
  for (u64 s = 4; s <= 3000; ++s) {
    i64 brute = std::numeric_limits<i64>::max();
    i64 reduced = brute;
    for (u64 y = 2; y <= s / 2; ++y) {
      const i64 d = i64(o[y]) + i64(o[s - y]) - i64(o[s]);
      brute = std::min(brute, d);
      if (y == s / 2 || is_prime(y + 1)) reduced = std::min(reduced, d);
    }
    REQUIRE(brute == reduced);
  }
}

TEST_CASE("reduction agrees with brute force on the full report") {
  const auto& t = shared::table_1e6();
  const VerificationReport brute = verify_exhaustive(t, 20000, false);
  const VerificationReport reduced = verify_exhaustive(t, 20000, true);
  CHECK(reduced.reduction_used);
  CHECK(brute.min_delta == reduced.min_delta);
  CHECK(brute.violations.empty());
  CHECK(reduced.violations.empty());
  CHECK(reduced.pairs_checked < brute.pairs_checked);
  CHECK(brute.argmin_x == reduced.argmin_x);
  CHECK(brute.argmin_y == reduced.argmin_y);
}

TEST_CASE("verification reports are worker-count invariant") {
  const auto& t = shared::table_1e6();
  const VerificationReport a = verify_exhaustive(t, 100000, true, 1);
  const VerificationReport b = verify_exhaustive(t, 100000, true, 3);
  CHECK(a.violations.empty());
  CHECK(a.pairs_checked == b.pairs_checked);
  CHECK(a.min_delta == b.min_delta);
  CHECK(a.argmin_x == b.argmin_x);
  CHECK(a.argmin_y == b.argmin_y);
}

TEST_CASE("verify_exhaustive edge cases") {
  const auto& t = shared::table_1e6();
  CHECK_THROWS_AS(verify_exhaustive(t, 2000000, false), std::out_of_range);
  const VerificationReport tiny = verify_exhaustive(t, 3, false);
  CHECK(tiny.pairs_checked == 0);
  const VerificationReport four = verify_exhaustive(t, 4, false);
  CHECK(four.pairs_checked == 1);
  CHECK(four.argmin_x == 2);
  CHECK(four.argmin_y == 2);
}

TEST_CASE("verify_range spot checks") {
  const auto& t = shared::table_1e6();
  const u64 x = 100000;
  const u64 y_lo = u64(std::ceil(dusart_ymin(x).y_min));
  const VerificationReport rep = verify_range(t, x, y_lo, x, 97);
  CHECK(rep.violations.empty());
  CHECK(rep.min_delta >= 0);
  CHECK(rep.pairs_checked == (x - y_lo) / 97 + 1);

  const VerificationReport one = verify_range(t, 100000, 2, 2);
  CHECK(one.pairs_checked == 1);
  CHECK(one.min_delta >= 0);

  CHECK_THROWS_AS(verify_range(t, 100000, 1, 50), std::domain_error);
  CHECK_THROWS_AS(verify_range(t, 100000, 50, 100001), std::domain_error);
  CHECK_THROWS_AS(verify_range(t, 900000, 2, 200000), std::out_of_range);
  CHECK_THROWS_AS(verify_range(t, 100000, 2, 50, 0), std::domain_error);
}

TEST_CASE("mv sanity oracle") {
  const auto& t = shared::table_1e6();
  std::vector<std::pair<u64, u64>> samples;
  samples.emplace_back(1, 2);           // pi(3)=2 <= 0 + 2*1
  samples.emplace_back(1000000 - 2, 2);
  std::mt19937_64 rng(20260809);
  std::uniform_int_distribution<u64> X(1, 999998);
  for (int i = 0; i < 10000; ++i) {
    const u64 x = X(rng);
    std::uniform_int_distribution<u64> Y(2, 1000000 - x);
    samples.emplace_back(x, Y(rng));
  }
  const MvReport rep = mv_check(t, samples);
  CHECK(rep.checked == samples.size());
  CHECK(rep.failures == 0);
  CHECK(rep.failing.empty());

  std::vector<std::pair<u64, u64>> bad{{0, 2}};
  CHECK_THROWS_AS(mv_check(t, bad), std::domain_error);
}

TEST_CASE("exception scan at X = 10 matches the hand count") {
  const auto& t = shared::table_1e6();
  const ExceptionScan s = scan_exceptions(t, 10, Hypothesis::unconditional);
  // x in 2..4: no regime, 1+2+3 pairs; x in 5..10: Dusart leaves
  // {2,3,4}, {2,3,4}, {2,3}, {2,3}, {2,3}, {2,3} uncovered
  CHECK(s.uncovered_pairs == 20);
  CHECK(s.violating_pairs == 0);
  CHECK(s.exhaustive);
}

TEST_CASE("exception scan at X = 1e3") {
  const auto& t = shared::table_1e6();
  const ExceptionScan rh = scan_exceptions(t, 1000, Hypothesis::rh);
  CHECK(rh.violating_pairs == 0);
  CHECK(rh.uncovered_pairs > 0);
  CHECK(rh.exhaustive);
  const double lX = std::log(1000.0);
  CHECK(rh.bound_value ==
        Catch::Approx(std::pow(1000.0, 1.5) * lX * lX).epsilon(1e-12));

  const ExceptionScan un = scan_exceptions(t, 1000, Hypothesis::unconditional);
  CHECK(un.violating_pairs == 0);
  const BoundSpec& jy = default_catalog().get(BoundId::jy_classical);
  CHECK(un.bound_value ==
        Catch::Approx(1000.0 * r_eval(jy, 2000.0) * lX * lX / std::log(lX))
            .epsilon(1e-12));
  // under RH nothing extra is proven at this scale, so the uncovered
  // sets coincide
  CHECK(un.uncovered_pairs == rh.uncovered_pairs);
}

TEST_CASE("exception scan is worker-count invariant") {
  const auto& t = shared::table_1e6();
  const ExceptionScan a = scan_exceptions(t, 1000, Hypothesis::rh,
                                          default_catalog(), true, 1);
  const ExceptionScan b = scan_exceptions(t, 1000, Hypothesis::rh,
                                          default_catalog(), true, 2);
  CHECK(a.uncovered_pairs == b.uncovered_pairs);
  CHECK(a.violating_pairs == b.violating_pairs);
  CHECK(a.bound_value == b.bound_value);
}

TEST_CASE("exception scan respects the resource cap") {
  const auto& t = shared::table_1e6();
  CHECK_THROWS_AS(scan_exceptions(t, 100000, Hypothesis::unconditional,
                                  default_catalog(), true, 1, 1000),
                  resource_error);
  const ExceptionScan counted = scan_exceptions(
      t, 100000, Hypothesis::unconditional, default_catalog(), false);
  CHECK_FALSE(counted.exhaustive);
  CHECK(counted.uncovered_pairs > 1000);
  CHECK(counted.violating_pairs == 0);
  CHECK_THROWS_AS(scan_exceptions(t, 1, Hypothesis::rh), std::domain_error);
  CHECK_THROWS_AS(scan_exceptions(t, 600000, Hypothesis::rh),
                  std::out_of_range);
}
