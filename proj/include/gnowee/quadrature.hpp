#ifndef GNOWEE_QUADRATURE_HPP
#define GNOWEE_QUADRATURE_HPP

#include <cmath>
#include <functional>

#include "gnowee/errors.hpp"

namespace gnowee {

namespace detail {

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on [a, b].
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-12, int max_depth = 40) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Adaptive Simpson over fixed equal panels; robust when the integrand mass
// sits far from the interval midpoint.
template <typename F>
double adaptive_simpson_panels(const F& f, double a, double b, int panels, double tol = 1e-13,
                               int max_depth = 40) {
  if (!(b > a) || panels < 1) return 0.0;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    total += adaptive_simpson(f, a + i * h, a + (i + 1) * h, tol, max_depth);
  }
  return total;
}

// Plain bisection on a sign-changing bracket. Caller supplies a verified
// bracket; throws if the bracket does not change sign.
template <typename F>
double bisect(const F& f, double lo, double hi, int max_iter, double xtol = 1e-13) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw ConvergenceError("bisect: bracket does not change sign");
  }
  for (int i = 0; i < max_iter && (hi - lo) > xtol * std::max(1.0, std::fabs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gnowee

#endif  // GNOWEE_QUADRATURE_HPP
