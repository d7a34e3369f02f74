#ifndef GNOWEE_BENCHMARKS_HPP
#define GNOWEE_BENCHMARKS_HPP

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gnowee/design_space.hpp"
#include "gnowee/errors.hpp"
#include "gnowee/problem.hpp"
#include "gnowee/tsplib.hpp"

namespace gnowee::bench {

// ---------------------------------------------------------------------------
// Unconstrained analytic functions (dimension-generic).
// ---------------------------------------------------------------------------

inline double ackley(const std::vector<double>& x) {
  const double d = static_cast<double>(x.size());
  double sq = 0.0, cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * std::numbers::pi * v);
  }
  return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + std::numbers::e;
}

inline double de_jong(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

inline double easom(const std::vector<double>& x) {
  const double a = x[0] - std::numbers::pi;
  const double b = x[1] - std::numbers::pi;
  return -std::cos(x[0]) * std::cos(x[1]) * std::exp(-(a * a + b * b));
}

inline double griewank(const std::vector<double>& x) {
  double s = 0.0, p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += x[i] * x[i];
    p *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return s / 4000.0 - p + 1.0;
}

inline double rastrigin(const std::vector<double>& x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
  return s;
}

inline double rosenbrock(const std::vector<double>& x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    s += 100.0 * a * a + b * b;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Constrained engineering designs. Formulations and sources are pinned in
// BENCHMARKS.md; constraints are satisfied iff g <= 0.
// ---------------------------------------------------------------------------

// Pressure vessel, x = [R, L, t_s, t_h].
inline double pressure_vessel_objective(double r, double l, double ts, double th) {
  return 0.6224 * r * l * ts + 1.7781 * r * r * th + 3.1611 * l * ts * ts + 19.8621 * r * th * th;
}

inline std::array<double, 4> pressure_vessel_constraints(double r, double l, double ts, double th) {
  return {
      -ts + 0.01932 * r,
      -th + 0.00954 * r,
      -std::numbers::pi * r * r * l - 4.0 / 3.0 * std::numbers::pi * r * r * r + 750.0 * 1728.0,
      -240.0 + l,
  };
}

// Tension/compression spring, x = [d, D, N] (wire diameter, coil diameter,
// active coils).
inline double spring_objective(double d, double coil, double n) {
  return (n + 2.0) * coil * d * d;
}

inline std::array<double, 4> spring_constraints(double d, double coil, double n) {
  return {
      1.0 - coil * coil * coil * n / (71785.0 * d * d * d * d),
      (4.0 * coil * coil - d * coil) / (12566.0 * (coil * d * d * d - d * d * d * d)) +
          1.0 / (5108.0 * d * d) - 1.0,
      1.0 - 140.45 * d / (coil * coil * n),
      (d + coil) / 1.5 - 1.0,
  };
}

// Welded beam, x = [h, l, t, b].
inline double welded_beam_objective(double h, double l, double t, double b) {
  return 1.10471 * h * h * l + 0.04811 * t * b * (14.0 + l);
}

inline std::array<double, 7> welded_beam_constraints(double h, double l, double t, double b) {
  constexpr double load = 6000.0;
  constexpr double elast = 30e6;
  constexpr double shear_mod = 12e6;
  const double tau_p = load / (std::sqrt(2.0) * h * l);
  const double moment = load * (14.0 + l / 2.0);
  const double radius = std::sqrt(l * l / 4.0 + (h + t) * (h + t) / 4.0);
  const double polar = 2.0 * (std::sqrt(2.0) * h * l * (l * l / 12.0 + (h + t) * (h + t) / 4.0));
  const double tau_pp = moment * radius / polar;
  const double tau = std::sqrt(tau_p * tau_p + 2.0 * tau_p * tau_pp * l / (2.0 * radius) + tau_pp * tau_pp);
  const double sigma = 504000.0 / (b * t * t);
  const double delta = 65856000.0 / (elast * b * t * t * t);
  const double buckling = 4.013 * elast * std::sqrt(t * t * b * b * b * b * b * b / 36.0) / 196.0 *
                          (1.0 - t / 28.0 * std::sqrt(elast / (4.0 * shear_mod)));
  return {
      tau - 13600.0,
      sigma - 30000.0,
      h - b,
      0.10471 * h * h + 0.04811 * t * b * (14.0 + l) - 5.0,
      0.125 - h,
      delta - 0.25,
      load - buckling,
  };
}

// Speed reducer, x = [x1..x7].
inline double speed_reducer_objective(const std::vector<double>& x) {
  return 0.7854 * x[0] * x[1] * x[1] * (3.3333 * x[2] * x[2] + 14.9334 * x[2] - 43.0934) -
         1.508 * x[0] * (x[5] * x[5] + x[6] * x[6]) + 7.4777 * (std::pow(x[5], 3) + std::pow(x[6], 3)) +
         0.7854 * (x[3] * x[5] * x[5] + x[4] * x[6] * x[6]);
}

inline std::array<double, 11> speed_reducer_constraints(const std::vector<double>& x) {
  return {
      27.0 / (x[0] * x[1] * x[1] * x[2]) - 1.0,
      397.5 / (x[0] * x[1] * x[1] * x[2] * x[2]) - 1.0,
      1.93 * std::pow(x[3], 3) / (x[1] * x[2] * std::pow(x[5], 4)) - 1.0,
      1.93 * std::pow(x[4], 3) / (x[1] * x[2] * std::pow(x[6], 4)) - 1.0,
      std::sqrt(std::pow(745.0 * x[3] / (x[1] * x[2]), 2) + 16.9e6) / (110.0 * std::pow(x[5], 3)) - 1.0,
      std::sqrt(std::pow(745.0 * x[4] / (x[1] * x[2]), 2) + 157.5e6) / (85.0 * std::pow(x[6], 3)) - 1.0,
      x[1] * x[2] / 40.0 - 1.0,
      5.0 * x[1] / x[0] - 1.0,
      x[0] / (12.0 * x[1]) - 1.0,
      (1.5 * x[5] + 1.9) / x[3] - 1.0,
      (1.1 * x[6] + 1.9) / x[4] - 1.0,
  };
}

// Mixed-integer spring, x = [D, N, d]; d comes from the standard table of
// 42 music-wire diameters.
inline const std::vector<double>& mi_spring_diameters() {
  static const std::vector<double> diam = {
      0.0090, 0.0095, 0.0104, 0.0118, 0.0128, 0.0132, 0.0140, 0.0150, 0.0162, 0.0173, 0.0180,
      0.0200, 0.0230, 0.0250, 0.0280, 0.0320, 0.0350, 0.0410, 0.0470, 0.0540, 0.0630, 0.0720,
      0.0800, 0.0920, 0.1050, 0.1200, 0.1350, 0.1480, 0.1620, 0.1770, 0.1920, 0.2070, 0.2250,
      0.2440, 0.2630, 0.2830, 0.3070, 0.3310, 0.3620, 0.3940, 0.4375, 0.5000};
  return diam;
}

inline double mi_spring_objective(double coil, double n, double d) {
  return std::numbers::pi * std::numbers::pi * coil * d * d * (n + 2.0) / 4.0;
}

inline std::array<double, 8> mi_spring_constraints(double coil, double n, double d) {
  constexpr double f_max = 1000.0;
  constexpr double s_allow = 189000.0;
  constexpr double l_max = 14.0;
  constexpr double d_min = 0.2;
  constexpr double d_outer_max = 3.0;
  constexpr double f_preload = 300.0;
  constexpr double defl_pm = 6.0;
  constexpr double defl_w = 1.25;
  constexpr double shear_mod = 11.5e6;
  const double c = coil / d;
  const double cf = (4.0 * c - 1.0) / (4.0 * c - 4.0) + 0.615 * d / coil;
  const double k = shear_mod * std::pow(d, 4) / (8.0 * n * std::pow(coil, 3));
  const double sigma_p = f_preload / k;
  const double l_f = f_max / k + 1.05 * (n + 2.0) * d;
  return {
      8.0 * cf * f_max * coil / (std::numbers::pi * d * d * d) - s_allow,
      l_f - l_max,
      d_min - d,
      (coil + d) - d_outer_max,
      3.0 - c,
      sigma_p - defl_pm,
      sigma_p + (f_max - f_preload) / k + 1.05 * (n + 2.0) * d - l_f,
      defl_w - (f_max - f_preload) / k,
  };
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

inline std::string data_dir() {
  if (const char* env = std::getenv("GNOWEE_DATA_DIR")) return env;
#ifdef GNOWEE_DATA_DIR_DEFAULT
  return GNOWEE_DATA_DIR_DEFAULT;
#else
  return "data";
#endif
}

// Bundled name/value/source rows of best-known fitnesses.
inline const std::map<std::string, double>& bundled_optima() {
  static const std::map<std::string, double> table = [] {
    std::map<std::string, double> t;
    const std::string path = data_dir() + "/optima.txt";
    std::ifstream in(path);
    if (in) {
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string name;
        double value;
        if (row >> name >> value) t[name] = value;
      }
    }
    return t;
  }();
  return table;
}

inline std::optional<double> bundled_optimum(const std::string& name) {
  const auto& t = bundled_optima();
  const auto it = t.find(name);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

struct BenchmarkInfo {
  std::string name;
  std::string kinds;      // variable families present
  std::size_t dimension;  // flattened design-vector length
  std::optional<double> known_optimum;
  bool implemented = true;
};

namespace detail {

inline std::vector<double> box(const DesignVector& v) { return v.values; }

inline Problem analytic_problem(const std::string& name, double lo, double hi, std::size_t dim,
                                double optimum, double (*fn)(const std::vector<double>&)) {
  Problem p;
  p.name = name;
  std::vector<VariableSpec> vars;
  vars.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) vars.push_back(VariableSpec::continuous(lo, hi));
  p.space = DesignSpace(std::move(vars));
  p.objective = [fn](const DesignVector& v) { return fn(v.values); };
  p.known_optimum = optimum;
  return p;
}

inline std::vector<double> multiples_of(double step, double lo, double hi) {
  std::vector<double> out;
  for (long k = 1; static_cast<double>(k) * step <= hi + 1e-12; ++k) {
    const double v = static_cast<double>(k) * step;
    if (v >= lo - 1e-12) out.push_back(v);
  }
  return out;
}

inline Problem tsp_problem(const std::string& name) {
  const std::string path = data_dir() + "/tsp/" + name + ".tsp";
  std::ifstream probe(path);
  if (!probe) {
    throw Error("benchmark '" + name + "': instance file not found at " + path +
                " (set GNOWEE_DATA_DIR to a directory containing tsp/" + name + ".tsp)");
  }
  probe.close();
  auto inst = std::make_shared<TspInstance>(load_tsplib(path));
  if (const auto bk = bundled_optimum(name)) inst->best_known = static_cast<long>(*bk);
  Problem p;
  p.name = name;
  p.space = DesignSpace({VariableSpec::combinatorial(static_cast<int>(inst->size()), true)});
  p.tsp = inst;
  p.objective = [inst](const DesignVector& v) {
    return static_cast<double>(tour_length(*inst, v.perm));
  };
  if (inst->best_known) p.known_optimum = static_cast<double>(*inst->best_known);
  return p;
}

}  // namespace detail

// Problem for an in-memory TSP instance (used for generated instances).
inline Problem make_tsp_problem(std::shared_ptr<const TspInstance> inst, const std::string& name) {
  Problem p;
  p.name = name;
  p.space = DesignSpace({VariableSpec::combinatorial(static_cast<int>(inst->size()), true)});
  p.tsp = inst;
  p.objective = [inst](const DesignVector& v) {
    return static_cast<double>(tour_length(*inst, v.perm));
  };
  if (inst->best_known) p.known_optimum = static_cast<double>(*inst->best_known);
  return p;
}

inline Problem make_benchmark(const std::string& name) {
  if (name == "ackley-3d") return detail::analytic_problem(name, -32.768, 32.768, 3, 0.0, bench::ackley);
  if (name == "de-jong-4d") return detail::analytic_problem(name, -5.12, 5.12, 4, 0.0, bench::de_jong);
  if (name == "easom-2d") return detail::analytic_problem(name, -100.0, 100.0, 2, -1.0, bench::easom);
  if (name == "griewank-6d") return detail::analytic_problem(name, -600.0, 600.0, 6, 0.0, bench::griewank);
  if (name == "rastrigin-5d") return detail::analytic_problem(name, -5.12, 5.12, 5, 0.0, bench::rastrigin);
  if (name == "rosenbrock-5d")
    return detail::analytic_problem(name, -2.048, 2.048, 5, 0.0, bench::rosenbrock);

  if (name == "spring") {
    Problem p;
    p.name = name;
    p.space = DesignSpace({VariableSpec::continuous(0.05, 2.0), VariableSpec::continuous(0.25, 1.3),
                           VariableSpec::continuous(2.0, 15.0)});
    p.objective = [](const DesignVector& v) {
      return spring_objective(v.values[0], v.values[1], v.values[2]);
    };
    for (int j = 0; j < 4; ++j) {
      p.inequality.push_back([j](const DesignVector& v) {
        return spring_constraints(v.values[0], v.values[1], v.values[2])[static_cast<std::size_t>(j)];
      });
    }
    p.known_optimum = 0.012665;
    return p;
  }

  if (name == "pressure-vessel" || name == "mi-pressure-vessel") {
    Problem p;
    p.name = name;
    const bool mi = (name == "mi-pressure-vessel");
    std::vector<VariableSpec> vars;
    vars.push_back(VariableSpec::continuous(10.0, 50.0));
    vars.push_back(VariableSpec::continuous(1e-8, 200.0));
    if (mi) {
      const auto thick = detail::multiples_of(0.0625, 0.0625, 6.1875);
      vars.push_back(VariableSpec::discrete_set(thick));
      vars.push_back(VariableSpec::discrete_set(thick));
    } else {
      vars.push_back(VariableSpec::continuous(0.0625, 6.1875));
      vars.push_back(VariableSpec::continuous(0.0625, 6.1875));
    }
    p.space = DesignSpace(std::move(vars));
    p.objective = [](const DesignVector& v) {
      return pressure_vessel_objective(v.values[0], v.values[1], v.values[2], v.values[3]);
    };
    for (int j = 0; j < 4; ++j) {
      p.inequality.push_back([j](const DesignVector& v) {
        return pressure_vessel_constraints(v.values[0], v.values[1], v.values[2],
                                           v.values[3])[static_cast<std::size_t>(j)];
      });
    }
    p.known_optimum = bundled_optimum(name);
    return p;
  }

  if (name == "welded-beam") {
    Problem p;
    p.name = name;
    p.space = DesignSpace({VariableSpec::continuous(0.1, 2.0), VariableSpec::continuous(0.1, 10.0),
                           VariableSpec::continuous(0.1, 10.0), VariableSpec::continuous(0.1, 2.0)});
    p.objective = [](const DesignVector& v) {
      return welded_beam_objective(v.values[0], v.values[1], v.values[2], v.values[3]);
    };
    for (int j = 0; j < 7; ++j) {
      p.inequality.push_back([j](const DesignVector& v) {
        return welded_beam_constraints(v.values[0], v.values[1], v.values[2],
                                       v.values[3])[static_cast<std::size_t>(j)];
      });
    }
    p.known_optimum = bundled_optimum(name);
    return p;
  }

  if (name == "speed-reducer") {
    Problem p;
    p.name = name;
    p.space = DesignSpace({VariableSpec::continuous(2.6, 3.6), VariableSpec::continuous(0.7, 0.8),
                           VariableSpec::continuous(17.0, 28.0), VariableSpec::continuous(7.3, 8.3),
                           VariableSpec::continuous(7.8, 8.3), VariableSpec::continuous(2.9, 3.9),
                           VariableSpec::continuous(5.0, 5.5)});
    p.objective = [](const DesignVector& v) { return speed_reducer_objective(v.values); };
    for (int j = 0; j < 11; ++j) {
      p.inequality.push_back([j](const DesignVector& v) {
        return speed_reducer_constraints(v.values)[static_cast<std::size_t>(j)];
      });
    }
    p.known_optimum = bundled_optimum(name);
    return p;
  }

  if (name == "mi-spring") {
    Problem p;
    p.name = name;
    p.space = DesignSpace({VariableSpec::continuous(0.6, 3.0), VariableSpec::integer(1.0, 70.0),
                           VariableSpec::discrete_set(mi_spring_diameters())});
    p.objective = [](const DesignVector& v) {
      return mi_spring_objective(v.values[0], v.values[1], v.values[2]);
    };
    for (int j = 0; j < 8; ++j) {
      p.inequality.push_back([j](const DesignVector& v) {
        return mi_spring_constraints(v.values[0], v.values[1], v.values[2])[static_cast<std::size_t>(j)];
      });
    }
    p.known_optimum = bundled_optimum(name);
    return p;
  }

  if (name == "mi-chemical-process") {
    throw NotImplementedError(
        "benchmark 'mi-chemical-process' is registered but not implemented (no bundled formulation)");
  }

  if (name == "eil51" || name == "st70" || name == "pr107" || name == "bier127" || name == "ch150") {
    return detail::tsp_problem(name);
  }

  throw ConfigError("unknown problem '" + name + "' (run the list command for available names)");
}

inline std::vector<BenchmarkInfo> list_benchmarks() {
  std::vector<BenchmarkInfo> out;
  const auto opt = [](const std::string& n) { return bundled_optimum(n); };
  out.push_back({"ackley-3d", "continuous", 3, 0.0, true});
  out.push_back({"bier127", "combinatorial", 127, opt("bier127"), true});
  out.push_back({"ch150", "combinatorial", 150, opt("ch150"), true});
  out.push_back({"de-jong-4d", "continuous", 4, 0.0, true});
  out.push_back({"easom-2d", "continuous", 2, -1.0, true});
  out.push_back({"eil51", "combinatorial", 51, opt("eil51"), true});
  out.push_back({"griewank-6d", "continuous", 6, 0.0, true});
  out.push_back({"mi-chemical-process", "mixed-integer", 0, std::nullopt, false});
  out.push_back({"mi-pressure-vessel", "mixed-integer", 4, opt("mi-pressure-vessel"), true});
  out.push_back({"mi-spring", "mixed-integer", 3, opt("mi-spring"), true});
  out.push_back({"pr107", "combinatorial", 107, opt("pr107"), true});
  out.push_back({"pressure-vessel", "continuous", 4, opt("pressure-vessel"), true});
  out.push_back({"rastrigin-5d", "continuous", 5, 0.0, true});
  out.push_back({"rosenbrock-5d", "continuous", 5, 0.0, true});
  out.push_back({"speed-reducer", "continuous", 7, opt("speed-reducer"), true});
  out.push_back({"spring", "continuous", 3, 0.012665, true});
  out.push_back({"st70", "combinatorial", 70, opt("st70"), true});
  out.push_back({"welded-beam", "continuous", 4, opt("welded-beam"), true});
  return out;
}

// Objective/constraint bundle for binding a user-defined design space to a
// registered objective (problem-definition files).
struct ObjectiveBundle {
  ObjectiveFn objective;
  std::vector<ObjectiveFn> inequality;
  std::optional<std::size_t> arity;  // required scalar count; nullopt = any
};

inline ObjectiveBundle benchmark_objective(const std::string& name) {
  static const std::map<std::string, double (*)(const std::vector<double>&)> analytic = {
      {"ackley", bench::ackley},       {"de-jong", bench::de_jong},
      {"easom", bench::easom},         {"griewank", bench::griewank},
      {"rastrigin", bench::rastrigin}, {"rosenbrock", bench::rosenbrock},
  };
  const auto it = analytic.find(name);
  if (it != analytic.end()) {
    auto fn = it->second;
    ObjectiveBundle b;
    b.objective = [fn](const DesignVector& v) { return fn(v.values); };
    if (name == "easom") b.arity = 2;
    return b;
  }
  Problem p = make_benchmark(name);
  ObjectiveBundle b;
  b.objective = p.objective;
  b.inequality = p.inequality;
  b.arity = p.space.size();
  return b;
}

}  // namespace gnowee::bench

#endif  // GNOWEE_BENCHMARKS_HPP
