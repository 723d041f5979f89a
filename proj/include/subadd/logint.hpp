#pragma once

// Logarithmic integral li(x) = integral_2^x du/log u (so li(2) = 0) and
// the combination li(x) + li(y) - li(x+y) evaluated without the
// three-way cancellation.
//
// li goes through the exponential integral, li(x) = Ei(log x) - Ei(log 2),
// with Ei computed by Ramanujan's rapidly convergent series
//
//   Ei(t) = gamma + log t
//         + exp(t/2) * sum_{n>=1} (-1)^(n-1) t^n / (n! 2^(n-1))
//                      * sum_{k=0}^{floor((n-1)/2)} 1/(2k+1),
//
// which needs about log(x) terms. Everything runs in __float128; an
// adaptive-quadrature oracle in the test suite validates the series.

#include <cmath>
#include <stdexcept>

#include "subadd/common.hpp"
#include "subadd/quadreal.hpp"

namespace subadd {

struct LiValue {
  double x = 0;
  double value = 0;
  double abs_err_bound = 0;  // certified absolute error of `value`
};

namespace detail {

struct EiResult {
  quad value;
  quad abs_err;
};

inline EiResult ei_ramanujan(quad t) {
  quad term = t;       // t^n / (n! 2^(n-1)) at n = 1
  quad inner = 1;      // sum of 1/(2k+1), k <= floor((n-1)/2)
  quad sum = term;     // n = 1 contribution
  quad peak = fabsq(sum);
  int n = 1;
  for (;;) {
    ++n;
    term *= t / (2 * quad(n));
    if (n & 1) inner += quad(1) / quad(n);
    const quad contrib = term * inner;
    if (n & 1)
      sum += contrib;
    else
      sum -= contrib;
    const quad mag = fabsq(contrib);
    if (mag > peak) peak = mag;
    if (2 * quad(n) > t && mag < fabsq(sum) * quad(1e-36)) break;
    if (n > 200000) break;  // unreachable for any log-scale argument
  }
  const quad e2 = expq(t / 2);
  const quad value = q_euler_gamma() + logq(t) + e2 * sum;
  const quad err =
      quad(n) * FLT128_EPSILON * (e2 * peak + fabsq(value)) +
      8 * FLT128_EPSILON * fabsq(value);
  return {value, err};
}

inline const EiResult& ei_at_log2() {
  static const EiResult r = ei_ramanujan(logq(quad(2)));
  return r;
}

// Trapezoid-doubling Romberg integration; the integrands here are
// analytic on the panels, so the table converges in a few levels.
template <class F>
quad romberg(F&& f, quad a, quad b, quad rel_tol = quad(1e-28)) {
  constexpr int kmax = 20;
  quad prev[kmax], cur[kmax];
  quad h = b - a;
  prev[0] = h * (f(a) + f(b)) / 2;
  for (int k = 1; k < kmax; ++k) {
    h /= 2;
    quad s = 0;
    const u64 mids = u64(1) << (k - 1);
    for (u64 i = 0; i < mids; ++i) s += f(a + h * quad(2 * i + 1));
    cur[0] = prev[0] / 2 + h * s;
    quad p4 = 4;
    for (int j = 1; j <= k; ++j) {
      cur[j] = (p4 * cur[j - 1] - prev[j - 1]) / (p4 - 1);
      p4 *= 4;
    }
    if (k >= 4 && fabsq(cur[k] - prev[k - 1]) <= rel_tol * fabsq(cur[k]))
      return cur[k];
    for (int j = 0; j <= k; ++j) prev[j] = cur[j];
  }
  return prev[kmax - 1];
}

}  // namespace detail

// li(x) with a certified absolute error bound; deterministic for fixed x.
inline LiValue li(double x) {
  if (!(x >= 2.0)) throw std::domain_error("li: domain is x >= 2");
  const detail::EiResult& base = detail::ei_at_log2();
  const detail::EiResult e = detail::ei_ramanujan(logq(quad(x)));
  const quad v = e.value - base.value;
  const double value = to_double(v);
  const double err = to_double(e.abs_err + base.abs_err) +
                     std::abs(value) * 1.2e-16 + 1e-300;
  return {x, value, err};
}

// li(x) + li(y) - li(x+y), as the single integral
//   integral_2^y (1/log u - 1/log(x+u)) du - integral_0^2 du/log(x+u),
// so the result is accurate even when it is ~1e-10 of each li term.
inline double delta_li(double x, double y) {
  if (!(y >= 2.0) || !(y <= x))
    throw std::domain_error("delta_li: need 2 <= y <= x");
  const quad X = x;
  const quad Y = y;
  auto gap = [X](quad u) { return quad(1) / logq(u) - quad(1) / logq(X + u); };
  quad total = 0;
  quad a = 2;
  while (a < Y) {
    const quad b = a * 8 < Y ? a * 8 : Y;
    total += detail::romberg(gap, a, b);
    a = b;
  }
  auto head = [X](quad u) { return quad(1) / logq(X + u); };
  total -= detail::romberg(head, quad(0), quad(2));
  return to_double(total);
}

}  // namespace subadd
