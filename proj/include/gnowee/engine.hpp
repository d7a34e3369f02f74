#ifndef GNOWEE_ENGINE_HPP
#define GNOWEE_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gnowee/design_space.hpp"
#include "gnowee/errors.hpp"
#include "gnowee/levy.hpp"
#include "gnowee/operators.hpp"
#include "gnowee/problem.hpp"
#include "gnowee/random.hpp"

namespace gnowee {

enum class InitScheme { Lhc, Uniform };

struct ConvergenceCriteria {
  std::uint64_t max_evals = 200000;
  std::uint64_t stall_evals = 10000;
  double stall_tol = 1e-6;
  double fitness_rel_tol = 0.01;
  // When unset, the problem's registered optimum drives the fitness check.
  std::optional<double> known_optimum;

  void validate() const {
    if (max_evals < 1) throw InvalidArgument("criteria: max_evals must be positive");
    if (stall_evals < 1) throw InvalidArgument("criteria: stall_evals must be positive");
    if (!(stall_tol > 0.0)) throw InvalidArgument("criteria: stall_tol must be positive");
    if (!(fitness_rel_tol > 0.0)) throw InvalidArgument("criteria: fitness_rel_tol must be positive");
  }
};

struct GnoweeSettings {
  int population = 25;
  InitScheme init = InitScheme::Lhc;
  LevyParams levy{0.5, 1.0, 1};
  OperatorFractions fractions{};
  ConvergenceCriteria criteria{};
  std::uint64_t seed = 0;
  bool tsp_distance_bias = false;

  void validate() const {
    if (population < 3) throw InvalidArgument("settings: population must be >= 3");
    levy.validate();
    fractions.validate();
    criteria.validate();
  }
};

enum class Termination { FitnessReached, Stalled, EvalBudget };

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::FitnessReached:
      return "FitnessReached";
    case Termination::Stalled:
      return "Stalled";
    case Termination::EvalBudget:
      return "EvalBudget";
  }
  return "?";
}

inline Termination termination_from_string(const std::string& s) {
  if (s == "FitnessReached") return Termination::FitnessReached;
  if (s == "Stalled") return Termination::Stalled;
  if (s == "EvalBudget") return Termination::EvalBudget;
  throw ParseError("unknown termination '" + s + "'");
}

struct HistoryPoint {
  std::uint64_t eval_count;
  double best_fitness;
};

struct RunResult {
  DesignVector best_vector;
  double best_fitness = std::numeric_limits<double>::quiet_NaN();
  bool best_feasible = false;
  std::uint64_t total_evals = 0;
  Termination termination = Termination::EvalBudget;
  // Best feasible fitness at every improvement, keyed by evaluation count.
  std::vector<HistoryPoint> history;
};

// Threshold shared by the engine's fitness criterion and the harness's
// premature-trial rule: within rel_tol of the optimum (absolute when the
// optimum is exactly zero).
inline double fitness_threshold(double known_optimum, double rel_tol) {
  if (known_optimum == 0.0) return rel_tol;
  return known_optimum + rel_tol * std::fabs(known_optimum);
}

inline bool fitness_reached(double best_feasible, double known_optimum, double rel_tol) {
  return best_feasible <= fitness_threshold(known_optimum, rel_tol);
}

// Infeasible incumbents order after every feasible value on the stall key.
inline constexpr double kInfeasibleKeyOffset = 1e30;

struct RunState {
  std::uint64_t total_evals = 0;
  bool budget_exhausted = false;
  std::optional<double> best_feasible_objective;
  double current_key = std::numeric_limits<double>::infinity();
  // Improvement timeline (eval_id, ordering key), ascending in both.
  std::vector<std::pair<std::uint64_t, double>> key_improvements;

  double key_at(std::uint64_t eval_count) const {
    double key = std::numeric_limits<double>::infinity();
    for (const auto& [at, k] : key_improvements) {
      if (at > eval_count) break;
      key = k;
    }
    return key;
  }
};

// First satisfied criterion in priority order fitness > stall > budget.
inline std::optional<Termination> check_convergence(const RunState& state,
                                                    const ConvergenceCriteria& criteria) {
  if (criteria.known_optimum && state.best_feasible_objective &&
      fitness_reached(*state.best_feasible_objective, *criteria.known_optimum,
                      criteria.fitness_rel_tol)) {
    return Termination::FitnessReached;
  }
  if (state.total_evals >= criteria.stall_evals) {
    const double then = state.key_at(state.total_evals - criteria.stall_evals);
    if (then - state.current_key < criteria.stall_tol) return Termination::Stalled;
  }
  if (state.budget_exhausted || state.total_evals >= criteria.max_evals) {
    return Termination::EvalBudget;
  }
  return std::nullopt;
}

// Full generation loop: over-sampled initialization, then per generation
// 3-opt, the Levy flights (with the Metropolis-Hastings update), crossover,
// scatter search, mutation, inversion crossover and 2-opt, with a
// convergence check after every operator batch. Deterministic per
// (problem, settings.seed).
inline RunResult run(const Problem& problem, const GnoweeSettings& settings) {
  settings.validate();
  const DesignSpace& space = problem.space;
  if (space.size() == 0) throw InvalidArgument("run: problem has an empty design space");

  ConvergenceCriteria criteria = settings.criteria;
  if (!criteria.known_optimum) criteria.known_optimum = problem.known_optimum;

  Mt19937Stream rng(settings.seed);
  EvalCounter counter;
  RunState state;

  DesignVector best_vec;
  Evaluation best_eval;
  bool has_best = false;
  std::vector<HistoryPoint> history;

  const auto consider = [&](const DesignVector& v, const Evaluation& ev) {
    if (!has_best || better(ev, best_eval)) {
      has_best = true;
      best_eval = ev;
      best_vec = v;
      const double key = ev.feasible ? ev.objective : kInfeasibleKeyOffset + ev.violation;
      state.current_key = key;
      state.key_improvements.emplace_back(ev.eval_id, key);
      if (ev.feasible) {
        state.best_feasible_objective = ev.objective;
        history.push_back({ev.eval_id, ev.objective});
      }
    }
  };

  const TryEvaluate try_evaluate = [&](const DesignVector& v) -> std::optional<Evaluation> {
    if (counter.count() >= criteria.max_evals) {
      state.budget_exhausted = true;
      return std::nullopt;
    }
    Evaluation ev = evaluate(problem, v, counter);
    state.total_evals = counter.count();
    consider(v, ev);
    return ev;
  };

  Population pop;
  const ReplaceMember replace = [&](std::size_t i, const DesignVector& v, const Evaluation& ev) {
    pop[i] = Member{v, ev};
  };

  const auto p = static_cast<std::size_t>(settings.population);

  // Initialization: over-sample, keep the best p.
  {
    const std::size_t n_init = std::max(2 * p, 3 * space.flattened_length());
    auto vectors = (settings.init == InitScheme::Lhc) ? lhc_initialize(space, n_init, rng)
                                                      : uniform_initialize(space, n_init, rng);
    Population all;
    all.reserve(vectors.size());
    for (auto& v : vectors) {
      const auto ev = try_evaluate(v);
      if (!ev) break;
      all.push_back(Member{std::move(v), *ev});
    }
    const auto ranks = rank_by_better(all);
    const std::size_t keep = std::min(p, all.size());
    pop.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) pop.push_back(all[ranks[i]]);
  }

  const auto finalize = [&](Termination t) {
    RunResult r;
    r.best_vector = best_vec;
    r.best_fitness = has_best ? best_eval.objective : std::numeric_limits<double>::quiet_NaN();
    r.best_feasible = has_best && best_eval.feasible;
    r.total_evals = counter.count();
    r.termination = t;
    r.history = history;
    return r;
  };

  if (const auto t = check_convergence(state, criteria)) return finalize(*t);
  if (pop.size() < p) return finalize(Termination::EvalBudget);

  // Evaluates a candidate batch in order, dropping children identical to
  // their parent; stops early when the budget runs out.
  const auto evaluate_batch = [&](std::vector<Candidate>&& cands) {
    std::vector<EvaluatedCandidate> out;
    out.reserve(cands.size());
    for (auto& c : cands) {
      if (c.vec == pop[c.parent].vec) continue;
      const auto ev = try_evaluate(c.vec);
      if (!ev) break;
      out.push_back(EvaluatedCandidate{c.parent, std::move(c.vec), *ev});
    }
    return out;
  };

  const bool comb = space.has_combinatorial();
  const auto perm_len = static_cast<std::size_t>(space.perm_length());
  const bool scalars = space.has_continuous() || space.has_discrete();
  const TspInstance* bias =
      (settings.tsp_distance_bias && problem.tsp) ? problem.tsp.get() : nullptr;

  for (;;) {
    const std::uint64_t evals_at_gen_start = counter.count();

    // 3-opt
    if (comb && perm_len >= 4) {
      three_opt(space, pop, rng, try_evaluate, replace);
      if (const auto t = check_convergence(state, criteria)) return finalize(*t);
    }

    // Levy flights: slice-wise children merged per parent, one evaluation
    // each, Metropolis-Hastings step in the update.
    {
      std::vector<Candidate> merged;
      std::unordered_map<std::size_t, std::size_t> slot;
      const auto absorb = [&](std::vector<Candidate>&& cs, auto&& apply_slice) {
        for (auto& c : cs) {
          const auto [it, inserted] = slot.try_emplace(c.parent, merged.size());
          if (inserted) merged.push_back(Candidate{c.parent, pop[c.parent].vec});
          apply_slice(merged[it->second].vec, c.vec);
        }
      };
      if (space.has_continuous()) {
        absorb(cont_levy_flight(space, pop, settings.fractions, settings.levy, rng),
               [&](DesignVector& dst, const DesignVector& src) {
                 for (std::size_t i : space.continuous_indices()) dst.values[i] = src.values[i];
               });
      }
      if (space.has_discrete()) {
        absorb(disc_levy_flight(space, pop, settings.fractions, settings.levy, rng),
               [&](DesignVector& dst, const DesignVector& src) {
                 for (std::size_t i : space.discrete_indices()) dst.values[i] = src.values[i];
               });
      }
      if (comb) {
        absorb(comb_levy_flight(space, pop, settings.fractions, settings.levy, rng),
               [&](DesignVector& dst, const DesignVector& src) { dst.perm = src.perm; });
      }
      if (!merged.empty()) {
        const auto evaluated = evaluate_batch(std::move(merged));
        population_update(pop, evaluated, /*mh=*/true, settings.fractions.f_mh, rng, replace);
        if (const auto t = check_convergence(state, criteria)) return finalize(*t);
      }
    }

    // Crossover
    if (scalars) {
      const auto evaluated = evaluate_batch(crossover(space, pop, settings.fractions, rng));
      population_update(pop, evaluated, false, 0.0, rng, replace);
      if (const auto t = check_convergence(state, criteria)) return finalize(*t);
    }

    // Scatter search
    if (scalars) {
      const auto evaluated = evaluate_batch(scatter_search(space, pop, settings.fractions, rng));
      population_update(pop, evaluated, false, 0.0, rng, replace);
      if (const auto t = check_convergence(state, criteria)) return finalize(*t);
    }

    // Mutation
    if (scalars) {
      const auto evaluated = evaluate_batch(mutation(space, pop, settings.fractions, rng));
      population_update(pop, evaluated, false, 0.0, rng, replace);
      if (const auto t = check_convergence(state, criteria)) return finalize(*t);
    }

    // Inversion crossover
    if (comb || space.has_discrete()) {
      inversion_crossover(space, pop, settings.fractions, rng, try_evaluate, replace);
      if (const auto t = check_convergence(state, criteria)) return finalize(*t);
    }

    // 2-opt
    if (comb && perm_len >= 3) {
      two_opt(space, pop, settings.fractions, settings.levy, rng, try_evaluate, replace, bias);
      if (const auto t = check_convergence(state, criteria)) return finalize(*t);
    }

    if (counter.count() == evals_at_gen_start) {
      // Nothing left that can move: every operator emitted only clones.
      return finalize(Termination::Stalled);
    }
  }
}

}  // namespace gnowee

#endif  // GNOWEE_ENGINE_HPP
