#pragma once

// Single command-line entry point. Subcommands: pi, li, rbound,
// threshold, verify, scan, crossover. JSON by default (keys sorted,
// doubles round-trip exactly); CSV for grid sweeps.
//
// Exit codes: 0 ok, 1 domain/resource/configuration error, 2 usage
// error, 3 verification found violations.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "subadd/common.hpp"
#include "subadd/logint.hpp"
#include "subadd/pnt_bounds.hpp"
#include "subadd/prime_table.hpp"
#include "subadd/thresholds.hpp"
#include "subadd/verifier.hpp"

namespace subadd::cli {

using nlohmann::json;

namespace detail {

inline json to_json(const ThresholdResult& r) {
  json j;
  j["x"] = r.x;
  j["regime"] = to_string(r.regime);
  if (std::isfinite(r.y_min))
    j["y_min"] = r.y_min;
  else
    j["y_min"] = nullptr;
  j["valid"] = r.valid;
  j["provenance"] = r.provenance;
  return j;
}

inline json to_json(const VerificationReport& r) {
  json j;
  j["s_min"] = r.s_min;
  j["s_max"] = r.s_max;
  j["pairs_checked"] = r.pairs_checked;
  j["reduction_used"] = r.reduction_used;
  j["min_delta"] = r.min_delta;
  j["argmin"] = {r.argmin_x, r.argmin_y};
  json v = json::array();
  for (const auto& s : r.violations)
    v.push_back({{"x", s.x}, {"y", s.y}, {"delta", s.delta}});
  j["violations"] = v;
  return j;
}

inline json to_json(const ExceptionScan& s) {
  json j;
  j["X"] = s.X;
  j["hypothesis"] = to_string(s.hypothesis);
  j["uncovered_pairs"] = s.uncovered_pairs;
  j["violating_pairs"] = s.violating_pairs;
  j["exhaustive"] = s.exhaustive;
  j["bound_value"] = s.bound_value;
  return j;
}

inline void emit(std::ostream& out, const json& j) {
  out << j.dump(2) << '\n';
}

inline PrimeTable make_table(u64 limit, const std::string& cache,
                             unsigned workers) {
  if (!cache.empty() && std::filesystem::exists(cache)) {
    PrimeTable t = PrimeTable::load(cache);
    if (t.limit() >= limit) return t;
  }
  SieveOptions opt;
  opt.workers = workers;
  PrimeTable t = PrimeTable::build(limit, opt);
  if (!cache.empty()) t.save(cache);
  return t;
}

inline Hypothesis parse_hypothesis_or_throw(const std::string& s) {
  Hypothesis h;
  if (!parse_hypothesis(s, h))
    throw config_error("unknown hypothesis '" + s +
                       "' (use unconditional, rh, rh-to-height)");
  return h;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"subadditivity toolkit for the prime counting function"};
  app.require_subcommand(1);

  // pi
  auto* cmd_pi = app.add_subcommand("pi", "exact prime count pi(x)");
  u64 pi_x = 0;
  u64 pi_table_limit = 0;
  std::string pi_cache;
  unsigned pi_workers = 1;
  cmd_pi->add_option("--x", pi_x, "argument of pi")->required();
  cmd_pi->add_option("--table-limit", pi_table_limit,
                     "build the table up to this limit (default: x)");
  cmd_pi->add_option("--table-cache", pi_cache, "binary table cache path");
  cmd_pi->add_option("--workers", pi_workers)->check(CLI::PositiveNumber);

  // li
  auto* cmd_li = app.add_subcommand("li", "logarithmic integral (li(2) = 0)");
  double li_x = 0;
  double li_y = std::numeric_limits<double>::quiet_NaN();
  cmd_li->add_option("--x", li_x, "abscissa, x >= 2")->required();
  cmd_li->add_option("--y", li_y,
                     "when given, report li(x)+li(y)-li(x+y) instead");

  // rbound
  auto* cmd_rb = app.add_subcommand(
      "rbound", "explicit |pi - li| <= C*R(x) bound catalog");
  bool rb_list = false;
  std::string rb_spec;
  double rb_x = std::numeric_limits<double>::quiet_NaN();
  double rb_logx = std::numeric_limits<double>::quiet_NaN();
  double rb_c_mty = std::numeric_limits<double>::quiet_NaN();
  std::string rb_hyp;
  std::vector<double> rb_sandwich;
  std::vector<double> rb_grid;
  std::string rb_format = "json";
  u64 rb_table_limit = 0;
  u64 rb_empirical_points = 0;
  double rb_empirical_xmin = 0, rb_empirical_xmax = 0;
  cmd_rb->add_flag("--list", rb_list, "print the catalog");
  cmd_rb->add_option("--spec", rb_spec, "bound name (see --list)");
  cmd_rb->add_option("--x", rb_x, "evaluate C*R(x)");
  cmd_rb->add_option("--logx", rb_logx,
                     "evaluate at log x (for x far beyond double range)");
  cmd_rb->add_option("--c-mty", rb_c_mty, "constant for the mty bound");
  cmd_rb->add_option("--hypothesis", rb_hyp,
                     "reject bounds stronger than this run mode");
  cmd_rb->add_option("--sandwich", rb_sandwich,
                     "check sqrt(x) <= R(x) <= x/log^3(x) at these x")
      ->delimiter(',');
  cmd_rb->add_option("--grid", rb_grid,
                     "log-space sweep: logx_min,logx_max,points")
      ->delimiter(',')
      ->expected(3);
  cmd_rb->add_option("--empirical-points", rb_empirical_points,
                     "verify |pi - li| <= C*R on a geometric grid");
  cmd_rb->add_option("--xmin", rb_empirical_xmin);
  cmd_rb->add_option("--xmax", rb_empirical_xmax);
  cmd_rb->add_option("--table-limit", rb_table_limit);
  cmd_rb->add_option("--format", rb_format)
      ->check(CLI::IsMember({"json", "csv", "text"}));

  // threshold
  auto* cmd_th = app.add_subcommand(
      "threshold", "proven y-range lower bound for a regime");
  u64 th_x = 0;
  std::string th_regime;
  double th_eps = std::numeric_limits<double>::quiet_NaN();
  double th_t0 = 3e12;
  std::string th_bound;
  double th_c_mty = std::numeric_limits<double>::quiet_NaN();
  cmd_th->add_option("--x", th_x)->required();
  cmd_th->add_option("--regime", th_regime,
                     "theorem1|rh-epsilon|rh-refined|partial-rh|dusart|"
                     "udrescu|mv-weak")
      ->required();
  cmd_th->add_option("--epsilon", th_eps);
  cmd_th->add_option("--t0", th_t0, "verified-RH height (default 3e12)");
  cmd_th->add_option("--bound", th_bound, "bound spec for theorem1");
  cmd_th->add_option("--c-mty", th_c_mty);

  // verify
  auto* cmd_vf = app.add_subcommand(
      "verify", "exhaustive subadditivity check for all x+y <= smax");
  u64 vf_smax = 0;
  bool vf_reduction = false;
  unsigned vf_workers = 1;
  u64 vf_table_limit = 0;
  std::string vf_cache;
  cmd_vf->add_option("--smax", vf_smax)->required();
  cmd_vf->add_flag("--reduction", vf_reduction,
                   "restrict to the reduced candidate set above s = 1e4 "
                   "(brute-force gated)");
  cmd_vf->add_option("--workers", vf_workers)->check(CLI::PositiveNumber);
  cmd_vf->add_option("--table-limit", vf_table_limit);
  cmd_vf->add_option("--table-cache", vf_cache);

  // scan
  auto* cmd_sc = app.add_subcommand(
      "scan", "exceptional-set scan: pairs below every proven range");
  u64 sc_X = 0;
  std::string sc_hyp;
  double sc_t0 = 3e12;
  double sc_c_mty = std::numeric_limits<double>::quiet_NaN();
  bool sc_no_check = false;
  unsigned sc_workers = 1;
  cmd_sc->add_option("--X", sc_X)->required();
  cmd_sc->add_option("--hypothesis", sc_hyp)->required();
  cmd_sc->add_option("--t0", sc_t0);
  cmd_sc->add_option("--c-mty", sc_c_mty);
  cmd_sc->add_flag("--no-check", sc_no_check,
                   "count uncovered pairs without checking Delta on them");
  cmd_sc->add_option("--workers", sc_workers)->check(CLI::PositiveNumber);

  // crossover
  auto* cmd_cx = app.add_subcommand(
      "crossover", "classical-form vs VK-form bound comparison in log-space");
  double cx_lmin = 40, cx_lmax = 80;
  u64 cx_points = 41;
  std::string cx_format = "json";
  cmd_cx->add_option("--lmin", cx_lmin, "grid start (log x)");
  cmd_cx->add_option("--lmax", cx_lmax, "grid end (log x)");
  cmd_cx->add_option("--points", cx_points)->check(CLI::PositiveNumber);
  cmd_cx->add_option("--format", cx_format)
      ->check(CLI::IsMember({"json", "csv"}));

  // CLI11 wants argv-style input.
  std::vector<const char*> argv;
  argv.push_back("subadd");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_pi)) {
      const u64 limit = std::max<u64>({pi_table_limit, pi_x, 2});
      PrimeTable t = detail::make_table(limit, pi_cache, pi_workers);
      detail::emit(out, json{{"pi", t.pi(pi_x)}, {"x", pi_x}});
      return 0;
    }

    if (app.got_subcommand(cmd_li)) {
      if (std::isnan(li_y)) {
        LiValue v = li(li_x);
        detail::emit(out, json{{"abs_err_bound", v.abs_err_bound},
                               {"li", v.value},
                               {"x", v.x}});
      } else {
        detail::emit(out, json{{"delta_li", delta_li(li_x, li_y)},
                               {"x", li_x},
                               {"y", li_y}});
      }
      return 0;
    }

    if (app.got_subcommand(cmd_rb)) {
      const BoundCatalog cat = std::isnan(rb_c_mty)
                                   ? BoundCatalog{}
                                   : BoundCatalog::with_mty(rb_c_mty);
      if (rb_list) {
        out << cat.to_text();
        return 0;
      }
      const BoundSpec* spec = cat.find(rb_spec);
      if (!spec)
        throw config_error("unknown bound spec '" + rb_spec +
                           "' (try rbound --list)");
      if (!rb_hyp.empty())
        require_admissible(detail::parse_hypothesis_or_throw(rb_hyp), *spec);
      if (!rb_sandwich.empty()) {
        SandwichReport rep = sandwich_check(*spec, rb_sandwich);
        json pts = json::array();
        for (const auto& p : rep.points)
          pts.push_back({{"x", p.x},
                         {"lower_ok", p.lower_ok},
                         {"upper_ok", p.upper_ok}});
        json j{{"spec", spec->name},
               {"all_pass", rep.all_pass},
               {"points", pts}};
        if (std::isnan(rep.pass_from))
          j["pass_from"] = nullptr;
        else
          j["pass_from"] = rep.pass_from;
        detail::emit(out, j);
        return 0;
      }
      if (!rb_grid.empty()) {
        const u64 n = std::max<u64>(2, u64(rb_grid[2]));
        if (rb_format == "csv") {
          out << "log_x,log_bound\n" << std::setprecision(17);
          for (u64 i = 0; i < n; ++i) {
            const double L =
                rb_grid[0] + (rb_grid[1] - rb_grid[0]) * double(i) / double(n - 1);
            out << L << ',' << log_r_eval(*spec, L) << '\n';
          }
        } else {
          json rows = json::array();
          for (u64 i = 0; i < n; ++i) {
            const double L =
                rb_grid[0] + (rb_grid[1] - rb_grid[0]) * double(i) / double(n - 1);
            rows.push_back({{"log_x", L}, {"log_bound", log_r_eval(*spec, L)}});
          }
          detail::emit(out, json{{"spec", spec->name}, {"points", rows}});
        }
        return 0;
      }
      if (rb_empirical_points > 0) {
        const double xmin = rb_empirical_xmin > 0 ? rb_empirical_xmin
                                                  : std::max(spec->x_min, 2.0);
        const double xmax = rb_empirical_xmax;
        if (!(xmax > xmin))
          throw config_error("empirical check needs --xmin < --xmax");
        const u64 limit = std::max<u64>(rb_table_limit, u64(xmax));
        PrimeTable t = detail::make_table(limit, "", 1);
        std::vector<double> xs;
        for (u64 i = 0; i < rb_empirical_points; ++i)
          xs.push_back(xmin * std::pow(xmax / xmin,
                                       double(i) /
                                           double(std::max<u64>(
                                               1, rb_empirical_points - 1))));
        EmpiricalReport rep = empirical_pnt_check(t, *spec, xs);
        detail::emit(out, json{{"spec", spec->name},
                               {"checked", rep.checked},
                               {"failures", rep.failures},
                               {"max_ratio", rep.max_ratio},
                               {"argmax_x", rep.argmax_x}});
        return rep.failures == 0 ? 0 : 3;
      }
      // plain evaluation
      double L;
      json j{{"spec", spec->name}};
      if (!std::isnan(rb_logx)) {
        L = rb_logx;
        j["log_x"] = rb_logx;
      } else if (!std::isnan(rb_x)) {
        L = std::log(rb_x);
        j["x"] = rb_x;
      } else {
        throw config_error("rbound needs --x or --logx");
      }
      const double lb = log_r_eval(*spec, L);
      j["log_bound"] = lb;
      if (lb < std::log(std::numeric_limits<double>::max()))
        j["bound"] = std::exp(lb);
      else
        j["bound"] = nullptr;
      detail::emit(out, j);
      return 0;
    }

    if (app.got_subcommand(cmd_th)) {
      Regime regime;
      if (!parse_regime(th_regime, regime))
        throw config_error("unknown regime '" + th_regime + "'");
      ThresholdResult r;
      switch (regime) {
        case Regime::theorem1: {
          if (th_bound.empty())
            throw config_error("theorem1 requires --bound <spec>");
          const BoundCatalog cat = std::isnan(th_c_mty)
                                       ? BoundCatalog{}
                                       : BoundCatalog::with_mty(th_c_mty);
          const BoundSpec* spec = cat.find(th_bound);
          if (!spec) throw config_error("unknown bound spec '" + th_bound + "'");
          r = theorem1_ymin(*spec, th_x);
          break;
        }
        case Regime::rh_epsilon:
          if (std::isnan(th_eps))
            throw config_error("rh-epsilon requires --epsilon");
          r = rh_epsilon_ymin(th_x, th_eps);
          break;
        case Regime::rh_refined:
          r = rh_refined_ymin(th_x);
          break;
        case Regime::partial_rh:
          r = partial_rh_ymin(th_x, th_t0);
          break;
        case Regime::dusart:
          r = dusart_ymin(th_x);
          break;
        case Regime::udrescu:
          if (std::isnan(th_eps))
            throw config_error("udrescu requires --epsilon");
          r = udrescu_ymin(th_x, th_eps);
          break;
        case Regime::mv_weak:
          r = mv_weak_ymin(th_x);
          break;
      }
      detail::emit(out, detail::to_json(r));
      return 0;
    }

    if (app.got_subcommand(cmd_vf)) {
      const u64 limit = std::max<u64>({vf_table_limit, vf_smax, 2});
      PrimeTable t = detail::make_table(limit, vf_cache, vf_workers);
      VerificationReport rep =
          verify_exhaustive(t, vf_smax, vf_reduction, vf_workers);
      detail::emit(out, detail::to_json(rep));
      return rep.violations.empty() ? 0 : 3;
    }

    if (app.got_subcommand(cmd_sc)) {
      const Hypothesis hyp = detail::parse_hypothesis_or_throw(sc_hyp);
      const BoundCatalog cat = std::isnan(sc_c_mty)
                                   ? BoundCatalog{}
                                   : BoundCatalog::with_mty(sc_c_mty);
      PrimeTable t = detail::make_table(std::max<u64>(2 * sc_X, 2), "",
                                        sc_workers);
      ExceptionScan s = scan_exceptions(t, sc_X, hyp, cat, !sc_no_check,
                                        sc_workers);
      detail::emit(out, detail::to_json(s));
      return s.violating_pairs == 0 ? 0 : 3;
    }

    if (app.got_subcommand(cmd_cx)) {
      if (!(cx_lmax > cx_lmin))
        throw config_error("crossover needs --lmin < --lmax");
      const u64 n = std::max<u64>(2, cx_points);
      if (cx_format == "csv") {
        out << "log_x,log_classical,log_vk,classical_le_vk\n"
            << std::setprecision(17);
        const BoundCatalog& cat = default_catalog();
        for (u64 i = 0; i < n; ++i) {
          const double L = cx_lmin + (cx_lmax - cx_lmin) * double(i) / double(n - 1);
          const double lc = log_r_eval(cat.get(BoundId::jy_classical), L);
          const double lv = log_r_eval(cat.get(BoundId::jy_vk), L);
          out << L << ',' << lc << ',' << lv << ',' << (lc <= lv ? 1 : 0)
              << '\n';
        }
        return 0;
      }
      json rows = json::array();
      const BoundCatalog& cat = default_catalog();
      for (u64 i = 0; i < n; ++i) {
        const double L = cx_lmin + (cx_lmax - cx_lmin) * double(i) / double(n - 1);
        const double lc = log_r_eval(cat.get(BoundId::jy_classical), L);
        const double lv = log_r_eval(cat.get(BoundId::jy_vk), L);
        rows.push_back({{"log_x", L},
                        {"log_classical", lc},
                        {"log_vk", lv},
                        {"classical_le_vk", lc <= lv}});
      }
      detail::emit(out, json{{"crossover_log_x", classical_vk_crossover()},
                             {"points", rows}});
      return 0;
    }
  } catch (const std::exception& e) {
    detail::emit(err, json{{"error", e.what()}});
    return 1;
  }
  return 2;
}

}  // namespace subadd::cli
