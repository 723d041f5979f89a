#pragma once

// Proven lower bounds y_min(x) for the ranges where the subadditivity
// inequality pi(x+y) <= pi(x) + pi(y) is known to hold, one routine per
// regime. Every returned threshold is computed in __float128 and rounded
// UP, so driving a verifier from it never skips part of a proven range.

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "subadd/common.hpp"
#include "subadd/pnt_bounds.hpp"
#include "subadd/quadreal.hpp"

namespace subadd {

enum class Regime {
  theorem1,
  rh_epsilon,
  rh_refined,
  partial_rh,
  dusart,
  udrescu,
  mv_weak,
};

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::theorem1: return "theorem1";
    case Regime::rh_epsilon: return "rh-epsilon";
    case Regime::rh_refined: return "rh-refined";
    case Regime::partial_rh: return "partial-rh";
    case Regime::dusart: return "dusart";
    case Regime::udrescu: return "udrescu";
    case Regime::mv_weak: return "mv-weak";
  }
  return "?";
}

inline bool parse_regime(std::string_view s, Regime& out) {
  for (Regime r : {Regime::theorem1, Regime::rh_epsilon, Regime::rh_refined,
                   Regime::partial_rh, Regime::dusart, Regime::udrescu,
                   Regime::mv_weak}) {
    if (s == to_string(r)) {
      out = r;
      return true;
    }
  }
  return false;
}

struct ThresholdResult {
  u64 x = 0;
  Regime regime = Regime::dusart;
  double y_min = std::numeric_limits<double>::infinity();
  bool valid = false;
  std::string provenance;
};

namespace detail {

// x0' = 4e5: subadditivity is verified exhaustively below this, so the
// correction terms r1, r2 are only defined from here on.
constexpr double remark_x0 = 4e5;

inline quad remark_p(quad L) { return quad(0.08) * L * L * L; }  // 0.08 log^3 x

inline quad r1_from_log(quad L) {
  const quad A = logq(remark_p(L));
  const quad h = L / 2;  // log sqrt(x)
  return 2 * A / h + 35 * A * A / (h * h);
}

inline quad r2_from_log(quad L) {
  const quad P = remark_p(L);
  const quad u = P / expq(L / 2);  // 0.08 log^3(x) / sqrt(x)
  const quad t1 = sqrtq(1 + u) * (1 + logq(1 + u) / L);
  const quad t2 = sqrtq(P) / expq(L / 4) * (quad(0.5) + logq(P) / L);
  return t1 + t2 - 1;
}

inline quad remark_product_log(quad L) {
  return (1 + r1_from_log(L)) * (2 + r2_from_log(L));
}

inline void check_remark_domain(double x) {
  if (!(x >= remark_x0))
    throw std::domain_error("r1/r2: domain is x >= 4e5");
}

inline std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace detail

inline double r1(double x) {
  detail::check_remark_domain(x);
  return to_double(detail::r1_from_log(logq(quad(x))));
}

inline double r2(double x) {
  detail::check_remark_domain(x);
  return to_double(detail::r2_from_log(logq(quad(x))));
}

// (1 + r1(x)) (2 + r2(x)); equals 65.097... at x = 4e5 and decreases
// toward 2 as x grows.
inline double remark_product(double x) {
  detail::check_remark_domain(x);
  return to_double(detail::remark_product_log(logq(quad(x))));
}

// y_min = 3 C R(2x) log^2(x) / loglog(x). The bound spec's validity and
// monotonicity are required at 2x, where R is applied.
inline ThresholdResult theorem1_ymin(const BoundSpec& spec, u64 x) {
  detail::require_configured(spec);
  ThresholdResult r;
  r.x = x;
  r.regime = Regime::theorem1;
  r.provenance = "y >= 3*C*R(2x)*log^2(x)/loglog(x) with " + spec.name +
                 " as |pi - li| <= C*R; R validity taken at 2x";
  const double xd = double(x);
  if (!(xd >= detail::remark_x0) || !(2 * xd >= spec.x_min) ||
      !(2 * xd >= spec.monotone_from)) {
    r.provenance += " [x below regime validity]";
    return r;
  }
  const quad L = logq(quad(x));
  const quad bound_2x = expq(detail::log_bound_q(spec, logq(2 * quad(x))));
  const quad y = 3 * bound_2x * L * L / logq(L);
  r.y_min = round_up_to_double(y);
  r.valid = r.y_min <= xd;
  if (!r.valid) r.provenance += " [proven range empty: y_min > x]";
  return r;
}

// y_min = (1 + r1(x)) (2 + r2(x)) sqrt(x) log^2(x) / (8 pi), assuming RH.
inline ThresholdResult rh_refined_ymin(u64 x) {
  ThresholdResult r;
  r.x = x;
  r.regime = Regime::rh_refined;
  r.provenance =
      "RH: y >= (1+r1(x))(2+r2(x))*sqrt(x)*log^2(x)/(8*pi), via the "
      "Schoenfeld (1976) bound sqrt(x)*log(x)/(8*pi)";
  if (!(double(x) >= detail::remark_x0)) {
    r.provenance += " [x below 4e5]";
    return r;
  }
  const quad L = logq(quad(x));
  const quad y = detail::remark_product_log(L) * expq(L / 2) * L * L /
                 (8 * q_pi());
  r.y_min = round_up_to_double(y);
  r.valid = r.y_min <= double(x);
  if (!r.valid) r.provenance += " [proven range empty: y_min > x]";
  return r;
}

// y_min = (2 + eps) sqrt(x) log^2(x) / (8 pi), in force only once
// (1 + r1(x))(2 + r2(x)) has decayed to 2 + eps.
inline ThresholdResult rh_epsilon_ymin(u64 x, double eps) {
  if (!(eps > 0)) throw std::domain_error("rh_epsilon_ymin: eps must be > 0");
  ThresholdResult r;
  r.x = x;
  r.regime = Regime::rh_epsilon;
  r.provenance = "RH: y >= (2+eps)*sqrt(x)*log^2(x)/(8*pi) for x with "
                 "(1+r1)(2+r2) <= 2+eps, eps=" + detail::fmt_g(eps);
  if (!(double(x) >= detail::remark_x0)) {
    r.provenance += " [x below 4e5]";
    return r;
  }
  const quad L = logq(quad(x));
  if (!(detail::remark_product_log(L) <= 2 + quad(eps))) {
    r.provenance += " [epsilon form not yet in force at this x]";
    return r;
  }
  const quad y = (2 + quad(eps)) * expq(L / 2) * L * L / (8 * q_pi());
  r.y_min = round_up_to_double(y);
  r.valid = r.y_min <= double(x);
  if (!r.valid) r.provenance += " [proven range empty: y_min > x]";
  return r;
}

// Smallest integer x >= 4e5 with (1+r1)(2+r2) <= 2+eps. The product is
// decreasing on the domain (grid-verified in the tests), so plain
// bisection applies.
inline u64 rh_epsilon_x_threshold(double eps) {
  if (!(eps > 0)) throw std::domain_error("rh_epsilon_x_threshold: eps must be > 0");
  auto in_force = [&](u64 x) {
    return detail::remark_product_log(logq(quad(x))) <= 2 + quad(eps);
  };
  u64 lo = 400000;
  if (in_force(lo)) return lo;
  u64 hi = u64(4) << 60;  // ~4.6e18
  if (!in_force(hi))
    throw std::domain_error(
        "rh_epsilon_x_threshold: threshold exceeds the integer range; "
        "use rh_epsilon_logx_threshold");
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    (in_force(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Same boundary in log-space, for eps so small that x_eps is
// astronomically large (eps = 0.1 already needs log x ~ 2184).
inline double rh_epsilon_logx_threshold(double eps) {
  if (!(eps > 0)) throw std::domain_error("rh_epsilon_logx_threshold: eps must be > 0");
  quad lo = logq(quad(400000));
  if (detail::remark_product_log(lo) <= 2 + quad(eps)) return to_double(lo);
  quad hi = 40000;
  if (!(detail::remark_product_log(hi) <= 2 + quad(eps)))
    throw std::domain_error("rh_epsilon_logx_threshold: eps too small for the supported range");
  for (int i = 0; i < 300; ++i) {
    const quad mid = (lo + hi) / 2;
    (detail::remark_product_log(mid) <= 2 + quad(eps) ? hi : lo) = mid;
  }
  return to_double(hi);
}

// Johnston's criterion: the Schoenfeld-strength bound holds at s once
// 9.06/loglog(s) * sqrt(s/log s) <= T0, RH being verified to height T0.
inline bool partial_rh_condition_s(double s, double t0) {
  if (!(s >= 2657))
    throw std::domain_error("partial_rh_condition: domain is x+y >= 2657");
  const quad S = s;
  const quad lhs = quad(9.06) / logq(logq(S)) * sqrtq(S / logq(S));
  return lhs <= quad(t0);
}

inline bool partial_rh_condition(u64 x, u64 y, double t0) {
  return partial_rh_condition_s(double(x) + double(y), t0);
}

// Largest s satisfying the criterion (the left side is increasing on
// the domain; grid-verified in the tests before trusting bisection).
inline double partial_rh_s_limit(double t0) {
  quad lo = logq(quad(2657));
  if (!partial_rh_condition_s(to_double(expq(lo)), t0)) return 0;
  quad hi = 200;  // s = e^200 ~ 7e86, beyond any T0 in use
  if (partial_rh_condition_s(std::exp(200.0), t0))
    throw std::domain_error("partial_rh_s_limit: T0 beyond supported range");
  for (int i = 0; i < 300; ++i) {
    const quad mid = (lo + hi) / 2;
    (partial_rh_condition_s(to_double(expq(mid)), t0) ? lo : hi) = mid;
  }
  return to_double(expq(lo));
}

// Refined RH range under partial verification of RH to height T0. The
// Johnston condition is required at s = 2x so the whole claimed range
// [y_min, x] is usable.
inline ThresholdResult partial_rh_ymin(u64 x, double t0) {
  ThresholdResult r = rh_refined_ymin(x);
  r.regime = Regime::partial_rh;
  r.provenance =
      "RH to height T0=" + detail::fmt_g(t0) +
      " (Platt-Trudgian reach 3e12): refined RH range; Johnston (2022) "
      "condition 9.06/loglog(s)*sqrt(s/log s) <= T0 required up to s = 2x";
  if (r.valid && !partial_rh_condition(x, x, t0)) {
    r.valid = false;
    r.provenance += " [condition fails at s = 2x]";
  }
  return r;
}

// Dusart's unconditional range 5x/(7 log x loglog x) <= y <= x, x >= 5.
inline ThresholdResult dusart_ymin(u64 x) {
  ThresholdResult r;
  r.x = x;
  r.regime = Regime::dusart;
  r.provenance = "Dusart (2002): 5x/(7*log(x)*loglog(x)) <= y <= x for x >= 5";
  if (x < 5) {
    r.provenance += " [x below 5]";
    return r;
  }
  const quad L = logq(quad(x));
  const quad y = 5 * quad(x) / (7 * L * logq(L));
  r.y_min = round_up_to_double(y);
  r.valid = r.y_min <= double(x);
  return r;
}

// Udrescu's (1+eps)-subadditivity condition; note this certifies the
// weaker inequality pi(x+y) <= (1+eps)(pi(x)+pi(y)).
inline bool udrescu_condition(u64 x, u64 y, double eps) {
  if (!(eps > 0)) throw std::domain_error("udrescu_condition: eps must be > 0");
  if (x < 17 || y < 17) return false;
  const quad s0 = 1 + expq(4 + 4 / quad(eps));
  return quad(x) + quad(y) >= s0;
}

inline ThresholdResult udrescu_ymin(u64 x, double eps) {
  if (!(eps > 0)) throw std::domain_error("udrescu_ymin: eps must be > 0");
  ThresholdResult r;
  r.x = x;
  r.regime = Regime::udrescu;
  r.provenance =
      "Udrescu (1975): pi(x+y) <= (1+eps)(pi(x)+pi(y)) for x,y >= 17 and "
      "x+y >= 1+exp(4+4/eps), eps=" + detail::fmt_g(eps) +
      " (weaker, epsilon-inflated inequality)";
  if (x < 17) {
    r.provenance += " [x below 17]";
    return r;
  }
  const quad s0 = 1 + expq(4 + 4 / quad(eps));
  const quad need = s0 - quad(x);
  r.y_min = need < 17 ? 17.0 : round_up_to_double(need);
  r.valid = r.y_min <= double(x);
  if (!r.valid) r.provenance += " [range empty: x too small for this eps]";
  return r;
}

// Montgomery-Vaughan holds for every x >= 1, y >= 2, but only gives
// pi(x+y) <= pi(x) + 2 pi(y).
inline ThresholdResult mv_weak_ymin(u64 x) {
  ThresholdResult r;
  r.x = x;
  r.regime = Regime::mv_weak;
  r.provenance =
      "Montgomery-Vaughan (1973): pi(x+y) <= pi(x)+2*pi(y) for all x >= 1, "
      "y >= 2 (weaker inequality; always in force)";
  if (x < 2) return r;
  r.y_min = 2.0;
  r.valid = true;
  return r;
}

// Smallest y_min among the regimes admissible under the hypothesis.
// Only regimes certifying the full inequality participate (no udrescu,
// no mv-weak).
inline ThresholdResult best_ymin(u64 x, Hypothesis hyp,
                                 const BoundCatalog& cat = default_catalog(),
                                 double t0 = 3e12) {
  ThresholdResult best;
  best.x = x;
  best.provenance =
      "no proven range covers this x under the requested hypothesis";
  auto consider = [&](const ThresholdResult& r) {
    if (r.valid && (!best.valid || r.y_min < best.y_min)) best = r;
  };
  consider(dusart_ymin(x));
  for (const auto& s : cat.specs()) {
    if (std::isnan(s.C)) continue;  // unconfigured (mty)
    if (!admissible(hyp, s.hypothesis)) continue;
    ThresholdResult t1 = theorem1_ymin(s, x);
    // the partial-RH bound is only usable where Johnston's condition
    // holds at 2x, the largest argument R sees
    if (s.id == BoundId::johnston_partial && t1.valid &&
        !partial_rh_condition_s(2.0 * double(x), t0))
      continue;
    consider(t1);
  }
  if (hyp == Hypothesis::rh) consider(rh_refined_ymin(x));
  if (hyp == Hypothesis::rh_to_height) consider(partial_rh_ymin(x, t0));
  return best;
}

}  // namespace subadd
