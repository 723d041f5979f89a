#include <catch_amalgamated.hpp>

#include <cmath>

#include "shared_tables.hpp"
#include "subadd/pnt_bounds.hpp"

using namespace subadd;

TEST_CASE("catalog carries the five bounds with their thresholds") {
  const BoundCatalog& c = default_catalog();
  REQUIRE(c.specs().size() == 5);
  CHECK(c.get(BoundId::jy_classical).x_min == 2.0);
  CHECK(c.get(BoundId::jy_vk).x_min == 23.0);
  CHECK(c.get(BoundId::schoenfeld_rh).x_min == 2657.0);
  CHECK(c.get(BoundId::johnston_partial).x_min == 2657.0);
  CHECK(c.get(BoundId::jy_classical).hypothesis == Hypothesis::unconditional);
  CHECK(c.get(BoundId::schoenfeld_rh).hypothesis == Hypothesis::rh);
  CHECK(c.get(BoundId::johnston_partial).hypothesis ==
        Hypothesis::rh_to_height);
  CHECK(c.find("jy-classical") != nullptr);
  CHECK(c.find("nonesuch") == nullptr);
  const std::string text = c.to_text();
  for (const char* name :
       {"jy-classical", "jy-vk", "mty", "schoenfeld-rh", "johnston-partial"})
    CHECK(text.find(name) != std::string::npos);
  CHECK(text.find("unset") != std::string::npos);  // mty constant
}

TEST_CASE("schoenfeld bound has its closed form") {
  const BoundSpec& s = default_catalog().get(BoundId::schoenfeld_rh);
  const double x = 2657.0;
  const double expect = std::sqrt(x) * std::log(x) / (8.0 * M_PI);
  CHECK(r_eval(s, x) == Catch::Approx(expect).epsilon(1e-12));
  CHECK(r_eval(s, 1e6) ==
        Catch::Approx(std::sqrt(1e6) * std::log(1e6) / (8.0 * M_PI))
            .epsilon(1e-12));
}

TEST_CASE("bounds reject arguments below their validity threshold") {
  const BoundCatalog& c = default_catalog();
  CHECK_THROWS_AS(r_eval(c.get(BoundId::jy_vk), 10.0), std::domain_error);
  CHECK_THROWS_AS(r_eval(c.get(BoundId::schoenfeld_rh), 2656.0),
                  std::domain_error);
  CHECK_NOTHROW(r_eval(c.get(BoundId::schoenfeld_rh), 2657.0));
  CHECK_THROWS_AS(log_r_eval(c.get(BoundId::jy_vk), std::log(10.0)),
                  std::domain_error);
}

TEST_CASE("mty needs an explicit constant") {
  const BoundCatalog& c = default_catalog();
  CHECK_THROWS_AS(r_eval(c.get(BoundId::mty), 1e6), config_error);
  CHECK_THROWS_AS(log_r_eval(c.get(BoundId::mty), 20.0), config_error);

  const BoundCatalog with = BoundCatalog::with_mty(0.5);
  const double L = std::log(1e6);
  const double expect =
      std::log(0.5) + L -
      0.2123 * std::pow(L, 0.6) * std::pow(std::log(L), -0.2);
  CHECK(log_r_eval(with.get(BoundId::mty), L) ==
        Catch::Approx(expect).epsilon(1e-13));
  CHECK_THROWS_AS(BoundCatalog::with_mty(-1.0), config_error);
}

TEST_CASE("hypothesis admissibility is ordered and enforced") {
  const BoundCatalog& c = default_catalog();
  CHECK_NOTHROW(require_admissible(Hypothesis::unconditional,
                                   c.get(BoundId::jy_classical)));
  CHECK_THROWS_AS(require_admissible(Hypothesis::unconditional,
                                     c.get(BoundId::schoenfeld_rh)),
                  config_error);
  CHECK_THROWS_AS(require_admissible(Hypothesis::unconditional,
                                     c.get(BoundId::johnston_partial)),
                  config_error);
  CHECK_THROWS_AS(require_admissible(Hypothesis::rh_to_height,
                                     c.get(BoundId::schoenfeld_rh)),
                  config_error);
  CHECK_NOTHROW(require_admissible(Hypothesis::rh_to_height,
                                   c.get(BoundId::johnston_partial)));
  // full RH implies RH to every height
  CHECK_NOTHROW(
      require_admissible(Hypothesis::rh, c.get(BoundId::schoenfeld_rh)));
  CHECK_NOTHROW(
      require_admissible(Hypothesis::rh, c.get(BoundId::johnston_partial)));
}

TEST_CASE("classical vs VK: sign pattern and both crossovers") {
  // Derived by direct evaluation (cross-checked against a 50-digit
  // independent computation): the classical form is larger below
  // log x ~ 57.41, smaller up to log x ~ 1.397e9, then larger again.
  CHECK(classical_vk_log_gap(20) > 0);
  CHECK(classical_vk_log_gap(40) > 0);
  CHECK(classical_vk_log_gap(57) > 0);
  CHECK(classical_vk_log_gap(58) < 0);
  CHECK(classical_vk_log_gap(59) < 0);  // superiority point
  CHECK(classical_vk_log_gap(60) < 0);
  CHECK(classical_vk_log_gap(100) < 0);
  CHECK(classical_vk_log_gap(1e4) < 0);
  CHECK(classical_vk_log_gap(1e6) < 0);
  CHECK(classical_vk_log_gap(1.39e9) < 0);
  CHECK(classical_vk_log_gap(1.40e9) > 0);
  CHECK(classical_vk_log_gap(1e10) > 0);

  const double lower = classical_vk_crossover();
  CHECK(lower > 57.35);
  CHECK(lower < 57.47);
  // within a factor e^2 of e^59
  CHECK(lower >= 57.0);
  CHECK(lower <= 61.0);

  CHECK_THROWS_AS(classical_vk_crossover(60, 80), std::domain_error);
}

TEST_CASE("each bound is nondecreasing from monotone_from to 1e30") {
  BoundCatalog cat = BoundCatalog::with_mty(1.0);
  for (const auto& s : cat.specs()) {
    const double L0 = std::log(s.monotone_from);
    const double L1 = 30.0 * std::log(10.0);
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 120; ++i) {
      const double L = L0 + (L1 - L0) * double(i) / 120.0;
      const double v = log_r_eval(s, L);
      REQUIRE(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("sandwich: schoenfeld observed pattern") {
  const BoundSpec& s = default_catalog().get(BoundId::schoenfeld_rh);
  const double grid[] = {1e6, 1e9, 1e12};
  const SandwichReport rep = sandwich_check(s, grid);
  REQUIRE(rep.points.size() == 3);
  CHECK(rep.points[0].lower_ok);
  CHECK(rep.points[1].lower_ok);
  CHECK(rep.points[2].lower_ok);
  // sqrt(x) log x <= x / log^3 x only once log^4 x <= sqrt(x), near 2.5e11
  CHECK_FALSE(rep.points[0].upper_ok);
  CHECK_FALSE(rep.points[1].upper_ok);
  CHECK(rep.points[2].upper_ok);
  CHECK_FALSE(rep.all_pass);
  CHECK(rep.pass_from == 1e12);

  const double fine[] = {1e11, 2e11, 3e11, 1e12};
  const SandwichReport fine_rep = sandwich_check(s, fine);
  CHECK_FALSE(fine_rep.points[0].upper_ok);
  CHECK_FALSE(fine_rep.points[1].upper_ok);
  CHECK(fine_rep.points[2].upper_ok);
  CHECK(fine_rep.pass_from == 3e11);
}

TEST_CASE("sandwich: jy-classical upper inequality fails at small x") {
  const BoundSpec& s = default_catalog().get(BoundId::jy_classical);
  const double grid[] = {1e3, 1e4, 1e6};
  const SandwichReport rep = sandwich_check(s, grid);
  for (const auto& p : rep.points) {
    CHECK(p.lower_ok);
    CHECK_FALSE(p.upper_ok);
  }
  CHECK_FALSE(rep.all_pass);
  CHECK(std::isnan(rep.pass_from));
}

TEST_CASE("sandwich: empty grid passes vacuously") {
  const SandwichReport rep =
      sandwich_check(default_catalog().get(BoundId::schoenfeld_rh), {});
  CHECK(rep.all_pass);
  CHECK(rep.points.empty());
  CHECK(std::isnan(rep.pass_from));
}

static std::vector<double> geometric(double lo, double hi, int n) {
  std::vector<double> xs;
  for (int i = 0; i < n; ++i)
    xs.push_back(lo * std::pow(hi / lo, double(i) / double(n - 1)));
  return xs;
}

TEST_CASE("empirical check: schoenfeld holds on [2657, 1e6]") {
  const auto& t = shared::table_1e6();
  const BoundSpec& s = default_catalog().get(BoundId::schoenfeld_rh);
  const auto xs = geometric(2657, 1e6, 300);
  const EmpiricalReport rep = empirical_pnt_check(t, s, xs);
  CHECK(rep.checked == 300);
  CHECK(rep.failures == 0);
  CHECK(rep.max_ratio < 1.0);
  CHECK(rep.max_ratio > 0.0);
}

TEST_CASE("empirical check: single point x = 2657") {
  const auto& t = shared::table_1e6();
  const BoundSpec& s = default_catalog().get(BoundId::schoenfeld_rh);
  const double xs[] = {2657.0};
  const EmpiricalReport rep = empirical_pnt_check(t, s, xs);
  CHECK(rep.failures == 0);
  CHECK(rep.max_ratio < 1.0);
}

TEST_CASE("empirical check: jy-classical holds on [1e3, 1e7]") {
  const auto& t = shared::table_1e7();
  const BoundSpec& s = default_catalog().get(BoundId::jy_classical);
  const auto xs = geometric(1e3, 1e7, 300);
  const EmpiricalReport rep = empirical_pnt_check(t, s, xs);
  CHECK(rep.failures == 0);
  CHECK(rep.max_ratio < 1.0);
}

TEST_CASE("log_r_eval handles astronomic abscissas without overflow") {
  const BoundSpec& s = default_catalog().get(BoundId::jy_classical);
  const double lb = log_r_eval(s, 2.8e10);
  CHECK(std::isfinite(lb));
  CHECK(lb > 2.7e10);  // ~ log x minus a sub-linear saving
  CHECK(lb < 2.9e10);
}
