#ifndef GNOWEE_LEVY_HPP
#define GNOWEE_LEVY_HPP

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "gnowee/errors.hpp"
#include "gnowee/quadrature.hpp"
#include "gnowee/random.hpp"

namespace gnowee {

// Samples accepted by tlf_sample are |z| / kTlfTruncScale; one step-scale
// constant shared with the flight operators' beta default.
inline constexpr double kTlfTruncScale = 10.0;

struct LevyParams {
  double alpha = 0.5;  // distribution index, 0 < alpha <= 2
  double gamma = 1.0;  // process scale, > 0
  int n = 1;           // independent summands per sample

  void validate() const {
    if (!(alpha > 0.0) || !(alpha <= 2.0)) {
      throw InvalidArgument("LevyParams: alpha must be in (0, 2], got " + std::to_string(alpha));
    }
    if (!(gamma > 0.0)) {
      throw InvalidArgument("LevyParams: gamma must be > 0, got " + std::to_string(gamma));
    }
    if (n < 1) throw InvalidArgument("LevyParams: n must be >= 1, got " + std::to_string(n));
  }
};

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 2.0)) {
    throw InvalidArgument("alpha must be in (0, 2], got " + std::to_string(alpha));
  }
}

// Standard deviation of the numerator normal when sigma_y = 1.
inline double mantegna_sigma_x(double alpha) {
  check_alpha(alpha);
  const double pi = std::numbers::pi;
  const double num = std::tgamma(1.0 + alpha) * std::sin(pi * alpha / 2.0);
  const double den = std::tgamma((1.0 + alpha) / 2.0) * alpha * std::pow(2.0, (alpha - 1.0) / 2.0);
  return std::pow(num / den, 1.0 / alpha);
}

// Amplification factor of the nonlinear convergence transform.
inline double mantegna_k(double alpha) {
  check_alpha(alpha);
  const double pi = std::numbers::pi;
  const double front = alpha * std::tgamma((alpha + 1.0) / (2.0 * alpha)) / std::tgamma(1.0 / alpha);
  const double inner =
      alpha * std::tgamma((alpha + 1.0) / 2.0) / (std::tgamma(1.0 + alpha) * std::sin(pi * alpha / 2.0));
  return front * std::pow(inner, 1.0 / alpha);
}

namespace detail {

// Density of nu = x/|y|^(1/alpha) evaluated at C. Integrated in log space:
// the integrand mass migrates toward q = 0 as C grows and fixed-width panels
// would miss it entirely.
inline double matching_lhs(double alpha, double c) {
  const double sx = mantegna_sigma_x(alpha);
  const double inv_a = 1.0 / alpha;
  const auto f = [&](double t) {
    const double q = std::exp(t);
    return q * std::pow(q, inv_a) *
           std::exp(-0.5 * q * q - std::pow(q, 2.0 * inv_a) * c * c / (2.0 * sx * sx));
  };
  return adaptive_simpson_panels(f, std::log(1e-12), std::log(14.0), 64, 1e-15) /
         (std::numbers::pi * sx);
}

// Stable density evaluated at the transform image theta*C,
// theta = (K(alpha)-1)/e + 1. Oscillatory cosine integral summed lobe-wise.
inline double matching_rhs(double alpha, double c) {
  const double theta = (mantegna_k(alpha) - 1.0) / std::numbers::e + 1.0;
  const double wc = theta * c;
  const auto f = [&](double q) { return std::cos(wc * q) * std::exp(-std::pow(q, alpha)); };
  const double decay_limit = std::pow(40.0, 1.0 / alpha);
  const double half_period = (std::fabs(wc) > 1e-12) ? std::numbers::pi / std::fabs(wc) : decay_limit;
  const double chunk = std::min(half_period, std::max(1.0, decay_limit / 1024.0));
  double total = 0.0;
  double x = 0.0;
  while (x < decay_limit) {
    const double next = std::min(x + chunk, decay_limit);
    total += adaptive_simpson(f, x, next, 1e-14, 34);
    x = next;
  }
  return total / std::numbers::pi;
}

inline double matching_residual(double alpha, double c) {
  return matching_lhs(alpha, c) - matching_rhs(alpha, c);
}

}  // namespace detail

struct CsolveOptions {
  double rel_tol = 1e-8;  // residual tolerance, relative to the integral magnitudes
  int max_iter = 200;     // bisection budget; <= 0 fails immediately
};

// Solves the density-matching equation for the transform constant C(alpha).
// Returns the outermost root located by a geometric scan from above plus
// bisection; the result is cached per alpha. Throws ConvergenceError when no
// bracket exists within the budget (the equation has no solution for small
// alpha) and InvalidArgument for alpha outside (0, 2].
inline double solve_c(double alpha, CsolveOptions opts = {}) {
  check_alpha(alpha);
  if (opts.max_iter <= 0) {
    throw ConvergenceError("solve_c: iteration budget exhausted for alpha=" + std::to_string(alpha));
  }

  static std::map<std::pair<double, double>, double> cache;
  static std::mutex mutex;
  const auto key = std::make_pair(alpha, opts.rel_tol);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  const auto g = [&](double c) { return detail::matching_residual(alpha, c); };

  // Geometric scan from above picks the outermost crossing.
  double scan_c[32];
  double scan_g[32];
  int n_scan = 0;
  double scale = 0.0;
  for (double c = 64.0; c >= 0.015; c *= 0.5) {
    scan_c[n_scan] = c;
    scan_g[n_scan] = g(c);
    scale = std::max(scale, std::fabs(detail::matching_rhs(alpha, c)));
    ++n_scan;
  }

  double root = 0.0;
  bool found = false;

  double max_abs = 0.0;
  int argmin = 0;
  for (int i = 0; i < n_scan; ++i) {
    max_abs = std::max(max_abs, std::fabs(scan_g[i]));
    if (std::fabs(scan_g[i]) < std::fabs(scan_g[argmin])) argmin = i;
  }
  if (max_abs < 1e-10 * std::max(scale, 1e-30)) {
    // Equation degenerate (alpha == 1: both sides are the Cauchy density for
    // every C). Any value satisfies the residual contract.
    root = scan_c[argmin];
    found = true;
  }

  if (!found) {
    for (int i = 0; i + 1 < n_scan; ++i) {
      if ((scan_g[i] < 0.0) != (scan_g[i + 1] < 0.0)) {
        root = bisect(g, scan_c[i + 1], scan_c[i], opts.max_iter);
        found = true;
        break;
      }
    }
  }
  if (!found) {
    // Fine linear sweep in case the sign-change interval fell between
    // geometric grid points.
    double prev_c = 8.0;
    double prev_g = g(prev_c);
    for (double c = 7.95; c >= 0.05; c -= 0.05) {
      const double gc = g(c);
      if ((gc < 0.0) != (prev_g < 0.0)) {
        root = bisect(g, c, prev_c, opts.max_iter);
        found = true;
        break;
      }
      prev_c = c;
      prev_g = gc;
    }
  }
  if (!found) {
    throw ConvergenceError("solve_c: no bracket for alpha=" + std::to_string(alpha) +
                           " (matching equation has no root)");
  }

  const double lhs = detail::matching_lhs(alpha, root);
  const double rhs = detail::matching_rhs(alpha, root);
  const double denom = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
  if (std::fabs(lhs - rhs) / denom > opts.rel_tol) {
    throw ConvergenceError("solve_c: residual above tolerance at alpha=" + std::to_string(alpha));
  }

  std::lock_guard<std::mutex> lock(mutex);
  cache[key] = root;
  return root;
}

// Transform constant used by the sampler. Where the matching equation is
// solvable this is solve_c; below the solvable range (alpha <~ 0.72) the
// lookup alpha is stepped toward 1 until a root exists, keeping small-alpha
// parameter choices operational. The transform is the identity in the tails,
// so the stable tail law does not depend on this constant.
inline double mantegna_c(double alpha) {
  check_alpha(alpha);
  static std::map<double, double> cache;
  static std::mutex mutex;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
  }

  double value = 1.0;
  if (std::fabs(mantegna_k(alpha) - 1.0) >= 1e-12) {
    const double dir = (alpha < 1.0) ? 1.0 : -1.0;
    double probe = alpha;
    for (;;) {
      try {
        value = solve_c(probe);
        break;
      } catch (const ConvergenceError&) {
        probe += 0.05 * dir;
        if ((dir > 0.0 && probe >= 0.995) || (dir < 0.0 && probe <= 1.005)) {
          value = 1.0;  // K ~ 1 near alpha = 1; constant is immaterial there
          break;
        }
      }
    }
  }

  std::lock_guard<std::mutex> lock(mutex);
  cache[alpha] = value;
  return value;
}

struct LevyTables {
  double sigma_x;
  double k;
  double c;
};

inline const LevyTables& levy_tables(double alpha) {
  static std::map<double, LevyTables> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(alpha);
  if (it == cache.end()) {
    LevyTables t{mantegna_sigma_x(alpha), mantegna_k(alpha), mantegna_c(alpha)};
    it = cache.emplace(alpha, t).first;
  }
  return it->second;
}

// One Levy-stable sample via the Mantegna construction: nu = x/|y|^(1/alpha)
// with x ~ N(0, sigma_x), y ~ N(0, 1); the convergence transform applied as
// an odd function of nu; summed and scaled by gamma^(1/alpha) n^(-1/alpha).
// Draw order per summand: x first, then y.
inline double levy_sample(const LevyParams& params, RandomSource& rng) {
  params.validate();
  const LevyTables& t = levy_tables(params.alpha);
  const double inv_a = 1.0 / params.alpha;
  double sum = 0.0;
  for (int k = 0; k < params.n; ++k) {
    const double x = rng.normal() * t.sigma_x;
    double y = rng.normal();
    while (std::fabs(y) < 1e-300) y = rng.normal();
    const double nu = x / std::pow(std::fabs(y), inv_a);
    const double m = std::fabs(nu);
    const double w = std::copysign(m * ((t.k - 1.0) * std::exp(-m / t.c) + 1.0), nu);
    sum += w;
  }
  return std::pow(params.gamma, inv_a) * std::pow(static_cast<double>(params.n), -inv_a) * sum;
}

// Truncated Levy flight on [0, 1]: |z| / kTlfTruncScale with rejection of
// values above 1. The rejection loop is geometric; the cap is unreachable in
// practice and guards against a broken stream.
inline double tlf_sample(double alpha, double gamma, RandomSource& rng) {
  const LevyParams params{alpha, gamma, 1};
  params.validate();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double z = levy_sample(params, rng);
    const double t = std::fabs(z) / kTlfTruncScale;
    if (t <= 1.0) return t;
  }
  throw InternalError("tlf_sample: rejection cap of 1000 redraws exceeded");
}

}  // namespace gnowee

#endif  // GNOWEE_LEVY_HPP
