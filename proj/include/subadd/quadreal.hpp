#pragma once

// __float128 helpers. Bound and threshold formulas are evaluated with
// ~33 significant decimal digits and only then rounded outward to
// double, so returned thresholds never undershoot the exact value.

#include <quadmath.h>

#include <cmath>
#include <limits>

namespace subadd {

using quad = __float128;

inline double to_double(quad v) { return static_cast<double>(v); }

inline quad q_euler_gamma() {
  static const quad g = strtoflt128(
      "0.57721566490153286060651209008240243104215933593992", nullptr);
  return g;
}

inline quad q_pi() { return M_PIq; }

// Smallest double not below v, after a relative bump that absorbs the
// accumulated __float128 rounding error of a short formula.
inline double round_up_to_double(quad v) {
  v += fabsq(v) * quad(1e-27);
  double d = to_double(v);
  if (static_cast<quad>(d) < v)
    d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

}  // namespace subadd
