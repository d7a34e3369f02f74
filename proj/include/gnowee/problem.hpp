#ifndef GNOWEE_PROBLEM_HPP
#define GNOWEE_PROBLEM_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gnowee/design_space.hpp"
#include "gnowee/errors.hpp"

namespace gnowee {

struct TspInstance;  // tsplib.hpp

using ObjectiveFn = std::function<double(const DesignVector&)>;

// Objective, inequality constraints g_j (satisfied iff <= 0) and equality
// constraints h_k (satisfied iff |h_k| <= eq_tol). All functions must be
// deterministic and pure.
struct Problem {
  std::string name;
  DesignSpace space;
  ObjectiveFn objective;
  std::vector<ObjectiveFn> inequality;
  std::vector<ObjectiveFn> equality;
  std::optional<double> known_optimum;
  double eq_tol = 1e-4;

  // Set for TSP problems; lets distance-aware operator hooks see coordinates.
  std::shared_ptr<const TspInstance> tsp;
};

struct Evaluation {
  double objective = 0.0;
  double violation = 0.0;
  bool feasible = false;
  std::uint64_t eval_id = 0;
};

// Monotone counter shared by everything that evaluates a problem; the final
// count is exactly the number of evaluate() calls.
class EvalCounter {
public:
  std::uint64_t increment() { return ++count_; }
  std::uint64_t count() const { return count_.load(); }

private:
  std::atomic<std::uint64_t> count_{0};
};

inline Evaluation evaluate(const Problem& problem, const DesignVector& vec, EvalCounter& counter) {
  double obj;
  try {
    obj = problem.objective(vec);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw EvaluationError("objective failed for problem '" + problem.name + "': " + e.what());
  }
  double violation = 0.0;
  for (const auto& g : problem.inequality) {
    violation += std::max(0.0, g(vec));
  }
  for (const auto& h : problem.equality) {
    violation += std::max(0.0, std::fabs(h(vec)) - problem.eq_tol);
  }
  Evaluation ev;
  ev.objective = obj;
  ev.violation = violation;
  ev.feasible = (violation == 0.0);
  ev.eval_id = counter.increment();
  return ev;
}

// Feasibility-first ordering: any feasible beats any infeasible; feasible
// compare on objective, infeasible on total violation. Exact ties keep the
// incumbent (return false).
inline bool better(const Evaluation& a, const Evaluation& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.feasible) return a.objective < b.objective;
  return a.violation < b.violation;
}

struct Member {
  DesignVector vec;
  Evaluation eval;
};

using Population = std::vector<Member>;

// Indices of `pop` ordered best-first under `better`; stable for ties.
inline std::vector<std::size_t> rank_by_better(const Population& pop) {
  std::vector<std::size_t> idx(pop.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return better(pop[a].eval, pop[b].eval); });
  return idx;
}

}  // namespace gnowee

#endif  // GNOWEE_PROBLEM_HPP
