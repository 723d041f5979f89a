#pragma once

// Catalog of explicit |pi(x) - li(x)| <= C*R(x) bounds with validity
// metadata, evaluated in log-space first so comparisons stay meaningful
// out to x = e^(2.8e10) and beyond, where the bound itself overflows.
//
//   jy-classical      9.59 x (log x)^0.515 exp(-0.8274 sqrt(log x)),  x >= 2
//   jy-vk             0.028 x (log x)^0.801
//                       * exp(-0.1853 (log x)^(3/5) (log log x)^(-1/5)), x >= 23
//   mty               C x exp(-0.2123 (log x)^(3/5) (log log x)^(-1/5)),
//                       C is mandatory configuration (no published constant)
//   schoenfeld-rh     sqrt(x) log(x) / (8 pi),  x >= 2657, needs RH
//   johnston-partial  same form, x >= 2657, needs RH only up to a height
//                     T0 satisfying 9.06/loglog(x) * sqrt(x/log x) <= T0

#include <cmath>
#include <limits>
#include <sstream>
#include <iomanip>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "subadd/common.hpp"
#include "subadd/logint.hpp"
#include "subadd/prime_table.hpp"
#include "subadd/quadreal.hpp"

namespace subadd {

enum class BoundId { jy_classical, jy_vk, mty, schoenfeld_rh, johnston_partial };

enum class Hypothesis { unconditional, rh_to_height, rh };

inline const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::unconditional: return "unconditional";
    case Hypothesis::rh_to_height: return "rh-to-height";
    case Hypothesis::rh: return "rh";
  }
  return "?";
}

inline bool parse_hypothesis(std::string_view s, Hypothesis& out) {
  if (s == "unconditional") out = Hypothesis::unconditional;
  else if (s == "rh") out = Hypothesis::rh;
  else if (s == "rh-to-height") out = Hypothesis::rh_to_height;
  else return false;
  return true;
}

// A run under hypothesis `run` may use bounds whose assumption is no
// stronger: unconditional < rh-to-height < rh.
inline bool admissible(Hypothesis run, Hypothesis spec) {
  return static_cast<int>(spec) <= static_cast<int>(run);
}

struct BoundSpec {
  BoundId id;
  std::string name;       // kebab-case, CLI-facing
  double C;               // multiplicative constant; NaN = must be configured
  double x_min;           // validity threshold
  Hypothesis hypothesis;
  double monotone_from;   // grid-verified nondecreasing from here on
};

inline void require_admissible(Hypothesis run, const BoundSpec& spec) {
  if (!admissible(run, spec.hypothesis))
    throw config_error(spec.name + " assumes " + to_string(spec.hypothesis) +
                       "; not admissible in a " + std::string(to_string(run)) +
                       " run");
}

class BoundCatalog {
 public:
  BoundCatalog() {
    const double c_rh = 1.0 / (8.0 * to_double(q_pi()));
    const double unset = std::numeric_limits<double>::quiet_NaN();
    specs_ = {
        {BoundId::jy_classical, "jy-classical", 9.59, 2.0,
         Hypothesis::unconditional, 2.0},
        {BoundId::jy_vk, "jy-vk", 0.028, 23.0, Hypothesis::unconditional, 23.0},
        {BoundId::mty, "mty", unset, 23.0, Hypothesis::unconditional, 23.0},
        {BoundId::schoenfeld_rh, "schoenfeld-rh", c_rh, 2657.0, Hypothesis::rh,
         2657.0},
        {BoundId::johnston_partial, "johnston-partial", c_rh, 2657.0,
         Hypothesis::rh_to_height, 2657.0},
    };
  }

  static BoundCatalog with_mty(double c_mty, double x_min_mty = 23.0) {
    if (!(c_mty > 0)) throw config_error("mty: constant must be positive");
    if (!(x_min_mty >= 2)) throw config_error("mty: x_min must be >= 2");
    BoundCatalog c;
    BoundSpec& m = c.specs_[2];
    m.C = c_mty;
    m.x_min = x_min_mty;
    m.monotone_from = std::max(23.0, x_min_mty);
    return c;
  }

  const BoundSpec& get(BoundId id) const {
    for (const auto& s : specs_)
      if (s.id == id) return s;
    throw std::logic_error("unknown bound id");
  }

  const BoundSpec* find(std::string_view name) const {
    for (const auto& s : specs_)
      if (s.name == name) return &s;
    return nullptr;
  }

  const std::vector<BoundSpec>& specs() const { return specs_; }

  std::string to_text() const {
    static const char* kForm[] = {
        "x*(log x)^0.515*exp(-0.8274*sqrt(log x))",
        "x*(log x)^0.801*exp(-0.1853*(log x)^(3/5)*(loglog x)^(-1/5))",
        "x*exp(-0.2123*(log x)^(3/5)*(loglog x)^(-1/5))",
        "sqrt(x)*log(x)",
        "sqrt(x)*log(x)",
    };
    std::ostringstream os;
    os << std::left << std::setw(18) << "name" << std::setw(14) << "C"
       << std::setw(8) << "x_min" << std::setw(15) << "hypothesis"
       << std::setw(15) << "monotone_from" << "R(x)\n";
    for (const auto& s : specs_) {
      std::ostringstream cval;
      if (std::isnan(s.C)) cval << "unset";
      else cval << std::setprecision(10) << s.C;
      os << std::left << std::setw(18) << s.name << std::setw(14) << cval.str()
         << std::setw(8) << s.x_min << std::setw(15)
         << to_string(s.hypothesis) << std::setw(15) << s.monotone_from
         << kForm[static_cast<int>(s.id)] << "\n";
    }
    return os.str();
  }

 private:
  std::vector<BoundSpec> specs_;
};

inline const BoundCatalog& default_catalog() {
  static const BoundCatalog c;
  return c;
}

namespace detail {

inline void require_configured(const BoundSpec& s) {
  if (std::isnan(s.C))
    throw config_error(s.name +
                       ": constant not configured (no published value exists; "
                       "supply one explicitly)");
}

// log(C * R(x)) as a function of L = log x.
inline quad log_bound_q(const BoundSpec& s, quad L) {
  const quad lC = logq(quad(s.C));
  switch (s.id) {
    case BoundId::jy_classical:
      return lC + L + quad(0.515) * logq(L) - quad(0.8274) * sqrtq(L);
    case BoundId::jy_vk:
      return lC + L + quad(0.801) * logq(L) -
             quad(0.1853) * powq(L, quad(0.6)) * powq(logq(L), quad(-0.2));
    case BoundId::mty:
      return lC + L -
             quad(0.2123) * powq(L, quad(0.6)) * powq(logq(L), quad(-0.2));
    case BoundId::schoenfeld_rh:
    case BoundId::johnston_partial:
      return lC + L / 2 + logq(L);
  }
  throw std::logic_error("unknown bound id");
}

inline void check_bound_domain(const BoundSpec& s, double log_x) {
  require_configured(s);
  if (!(log_x >= std::log(s.x_min)))
    throw std::domain_error(s.name + ": below validity threshold x_min=" +
                            std::to_string(s.x_min));
}

}  // namespace detail

// log(C * R(x)) given log x; usable far beyond double overflow.
inline double log_r_eval(const BoundSpec& s, double log_x) {
  detail::check_bound_domain(s, log_x);
  return to_double(detail::log_bound_q(s, quad(log_x)));
}

// The full bound C * R(x) as one value.
inline double r_eval(const BoundSpec& s, double x) {
  detail::require_configured(s);
  if (!(x >= s.x_min))
    throw std::domain_error(s.name + ": below validity threshold x_min=" +
                            std::to_string(s.x_min));
  return std::exp(to_double(detail::log_bound_q(s, logq(quad(x)))));
}

struct SandwichPoint {
  double x;
  bool lower_ok;  // sqrt(x) <= R(x)
  bool upper_ok;  // R(x) <= x / log^3 x
};

struct SandwichReport {
  std::vector<SandwichPoint> points;  // ascending x
  bool all_pass = true;
  // Smallest grid x such that every grid point from there on passes;
  // NaN when even the last point fails.
  double pass_from = std::numeric_limits<double>::quiet_NaN();
};

// Where does sqrt(x) <= R(x) <= x/log^3 x hold? R is the bare error
// function, i.e. C is divided back out.
inline SandwichReport sandwich_check(const BoundSpec& s,
                                     std::span<const double> grid) {
  std::vector<double> xs(grid.begin(), grid.end());
  std::sort(xs.begin(), xs.end());
  SandwichReport rep;
  for (double x : xs) {
    const quad L = logq(quad(x));
    const quad logR = detail::log_bound_q(s, L) - logq(quad(s.C));
    SandwichPoint p{x, L / 2 <= logR, logR <= L - 3 * logq(L)};
    rep.all_pass = rep.all_pass && p.lower_ok && p.upper_ok;
    rep.points.push_back(p);
  }
  for (auto it = rep.points.rbegin(); it != rep.points.rend(); ++it) {
    if (!(it->lower_ok && it->upper_ok)) break;
    rep.pass_from = it->x;
  }
  return rep;
}

struct EmpiricalReport {
  u64 checked = 0;
  u64 failures = 0;           // points with |pi - li| > C*R
  double max_ratio = 0;       // max |pi - li| / (C*R)
  double argmax_x = 0;
};

// Verifies |pi(x) - li(x)| <= C*R(x) against the exact table.
inline EmpiricalReport empirical_pnt_check(const PrimeTable& table,
                                           const BoundSpec& s,
                                           std::span<const double> xs) {
  EmpiricalReport rep;
  for (double x : xs) {
    const u64 t = static_cast<u64>(x);
    const double gap = std::abs(double(table.pi(t)) - li(x).value);
    const double bound = r_eval(s, x);
    const double ratio = gap / bound;
    ++rep.checked;
    if (gap > bound) ++rep.failures;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax_x = x;
    }
  }
  return rep;
}

// log-space gap between the classical-form and VK-form bounds; negative
// means the classical form is the smaller (better) one.
inline double classical_vk_log_gap(double log_x) {
  const BoundCatalog& c = default_catalog();
  const quad L = log_x;
  return to_double(detail::log_bound_q(c.get(BoundId::jy_classical), L) -
                   detail::log_bound_q(c.get(BoundId::jy_vk), L));
}

// Lower crossover abscissa (as log x) where the classical form first
// drops below the VK form; bisected over a sign change.
inline double classical_vk_crossover(double lo = 40.0, double hi = 80.0) {
  if (!(classical_vk_log_gap(lo) > 0) || !(classical_vk_log_gap(hi) < 0))
    throw std::domain_error("classical_vk_crossover: [lo, hi] must bracket the sign change");
  for (int i = 0; i < 200; ++i) {
    const double mid = (lo + hi) / 2;
    (classical_vk_log_gap(mid) > 0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace subadd
