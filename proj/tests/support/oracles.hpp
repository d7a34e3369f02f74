#ifndef GNOWEE_TESTS_ORACLES_HPP
#define GNOWEE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "gnowee/levy.hpp"
#include "gnowee/tsplib.hpp"

namespace gnowee::testing {

// ---------------------------------------------------------------------------
// Independent quadrature for the transform-constant matching equation:
// composite Simpson on fixed grids (a different scheme from the library's
// adaptive panels). Used to verify solve_c residuals.
// ---------------------------------------------------------------------------

template <typename F>
double composite_simpson(const F& f, double a, double b, int n_even) {
  const double h = (b - a) / n_even;
  double s = f(a) + f(b);
  for (int i = 1; i < n_even; ++i) {
    s += f(a + i * h) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

inline double oracle_matching_lhs(double alpha, double c) {
  const double sx = mantegna_sigma_x(alpha);
  const double inv_a = 1.0 / alpha;
  const auto f = [&](double t) {
    const double q = std::exp(t);
    return q * std::pow(q, inv_a) *
           std::exp(-0.5 * q * q - std::pow(q, 2.0 * inv_a) * c * c / (2.0 * sx * sx));
  };
  return composite_simpson(f, std::log(1e-12), std::log(14.0), 160000) / (std::numbers::pi * sx);
}

inline double oracle_matching_rhs(double alpha, double c) {
  const double theta = (mantegna_k(alpha) - 1.0) / std::numbers::e + 1.0;
  const double wc = theta * c;
  const auto f = [&](double q) { return std::cos(wc * q) * std::exp(-std::pow(q, alpha)); };
  const double limit = std::pow(42.0, 1.0 / alpha);
  const double half_period = (std::fabs(wc) > 1e-12) ? std::numbers::pi / std::fabs(wc) : limit;
  const double chunk = std::min(half_period, std::max(0.5, limit / 4096.0));

  // Dyadically graded mesh over the first chunk: exp(-q^alpha) has a singular
  // derivative at q = 0 for alpha < 1 and defeats a fixed-width rule there.
  double total = 0.0;
  const double first = std::min(chunk, limit);
  double hi = first;
  for (int k = 0; k < 48; ++k) {
    const double lo = hi * 0.5;
    total += composite_simpson(f, lo, hi, 32);
    hi = lo;
  }

  double x = first;
  while (x < limit) {
    const double next = std::min(x + chunk, limit);
    total += composite_simpson(f, x, next, 64);
    x = next;
  }
  return total / std::numbers::pi;
}

// Relative residual of the matching equation at c.
inline double oracle_matching_residual(double alpha, double c) {
  const double lhs = oracle_matching_lhs(alpha, c);
  const double rhs = oracle_matching_rhs(alpha, c);
  return std::fabs(lhs - rhs) / std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
}

// ---------------------------------------------------------------------------
// Step-by-step re-implementation of the stable sampler on given normal draws
// (x1, y1, x2, y2, ...).
// ---------------------------------------------------------------------------

inline double oracle_levy_from_draws(double alpha, double gamma, const std::vector<double>& draws) {
  const double sigma = mantegna_sigma_x(alpha);
  const double kap = mantegna_k(alpha);
  const double c = mantegna_c(alpha);
  const int n = static_cast<int>(draws.size() / 2);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = draws[2 * static_cast<std::size_t>(i)] * sigma;
    const double y = draws[2 * static_cast<std::size_t>(i) + 1];
    const double nu = x / std::pow(std::fabs(y), 1.0 / alpha);
    const double m = std::fabs(nu);
    const double w = std::copysign(m * ((kap - 1.0) * std::exp(-m / c) + 1.0), nu);
    sum += w;
  }
  return std::pow(gamma, 1.0 / alpha) * std::pow(static_cast<double>(n), -1.0 / alpha) * sum;
}

// ---------------------------------------------------------------------------
// Survival-function tail slope on a log-log grid between two quantiles.
// ---------------------------------------------------------------------------

inline double tail_slope(std::vector<double> magnitudes, double q_lo, double q_hi) {
  std::sort(magnitudes.begin(), magnitudes.end());
  const std::size_t n = magnitudes.size();
  const double lo = magnitudes[static_cast<std::size_t>(q_lo * (n - 1))];
  const double hi = magnitudes[static_cast<std::size_t>(q_hi * (n - 1))];
  const int points = 200;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int i = 0; i < points; ++i) {
    const double t = lo * std::pow(hi / lo, (i + 0.5) / points);
    const auto above = magnitudes.end() - std::upper_bound(magnitudes.begin(), magnitudes.end(), t);
    if (above == 0) continue;
    const double x = std::log(t);
    const double y = std::log(static_cast<double>(above) / static_cast<double>(n));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Exhaustive symmetric-TSP optimum (first city fixed; both directions are
// enumerated, which is harmless).
// ---------------------------------------------------------------------------

inline long brute_force_tsp_optimum(const TspInstance& inst) {
  const int n = static_cast<int>(inst.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  long best = tour_length(inst, perm);
  std::vector<int> rest(perm.begin() + 1, perm.end());
  std::sort(rest.begin(), rest.end());
  do {
    std::copy(rest.begin(), rest.end(), perm.begin() + 1);
    best = std::min(best, tour_length(inst, perm));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

}  // namespace gnowee::testing

#endif
