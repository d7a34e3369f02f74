#include <catch2/catch_amalgamated.hpp>

#include "gnowee/benchmarks.hpp"
#include "gnowee/engine.hpp"

using namespace gnowee;
using Catch::Approx;

namespace {

Problem quadratic_1d() {
  Problem p;
  p.name = "quadratic";
  p.space = DesignSpace({VariableSpec::continuous(-5.0, 5.0)});
  p.objective = [](const DesignVector& v) {
    const double d = v.values[0] - 0.3;
    return d * d;
  };
  p.known_optimum = 0.0;
  return p;
}

}  // namespace

TEST_CASE("settings validation") {
  GnoweeSettings s;
  s.population = 2;
  REQUIRE_THROWS_AS(s.validate(), InvalidArgument);
  s.population = 25;
  s.criteria.max_evals = 0;
  REQUIRE_THROWS_AS(s.validate(), InvalidArgument);
  s.criteria.max_evals = 100;
  s.fractions.f_elite = 1.5;
  REQUIRE_THROWS_AS(s.validate(), InvalidArgument);
}

TEST_CASE("constant objective reaches the fitness criterion during initialization") {
  Problem p;
  p.name = "flat";
  p.space = DesignSpace({VariableSpec::continuous(0.0, 1.0)});
  p.objective = [](const DesignVector&) { return 0.0; };
  p.known_optimum = 0.0;
  GnoweeSettings s;
  s.seed = 1;
  const RunResult r = run(p, s);
  REQUIRE(r.termination == Termination::FitnessReached);
  REQUIRE(r.total_evals == std::max<std::uint64_t>(2 * 25, 3 * 1));
  REQUIRE(r.best_fitness == 0.0);
}

TEST_CASE("budget equal to the initialization sample count stops with the best sample") {
  Problem p = quadratic_1d();
  p.known_optimum.reset();
  GnoweeSettings s;
  s.seed = 2;
  s.criteria.max_evals = std::max<std::uint64_t>(2 * 25, 3 * 1);  // initialization only
  const RunResult r = run(p, s);
  REQUIRE(r.termination == Termination::EvalBudget);
  REQUIRE(r.total_evals == s.criteria.max_evals);
  REQUIRE(r.best_feasible);
}

TEST_CASE("the evaluation budget is never exceeded") {
  Problem p = bench::make_benchmark("rastrigin-5d");
  GnoweeSettings s;
  s.seed = 3;
  s.criteria.max_evals = 777;
  const RunResult r = run(p, s);
  REQUIRE(r.total_evals <= 777);
  REQUIRE(r.termination == Termination::EvalBudget);
}

TEST_CASE("check_convergence priority and boundary rules") {
  ConvergenceCriteria c;
  c.known_optimum = 1.0;

  RunState stalled;
  stalled.total_evals = 20000;
  stalled.current_key = 5.0;
  stalled.best_feasible_objective = 5.0;
  stalled.key_improvements = {{100, 5.0 + 1e-7}, {10001, 5.0}};
  REQUIRE(check_convergence(stalled, c) == Termination::Stalled);

  RunState reached = stalled;
  reached.best_feasible_objective = 1.009;
  reached.current_key = 1.009;
  REQUIRE(check_convergence(reached, c) == Termination::FitnessReached);  // <= 1.01

  RunState running;
  running.total_evals = 199999;
  running.current_key = 5.0;
  running.best_feasible_objective = 5.0;
  running.key_improvements = {{199000, 5.0}};
  ConvergenceCriteria open;
  open.known_optimum = 1.0;
  open.stall_evals = 10000;
  // improved by a lot within the window
  running.key_improvements = {{100, 50.0}, {199000, 5.0}};
  REQUIRE_FALSE(check_convergence(running, open).has_value());
}

TEST_CASE("fitness threshold handles positive, negative and zero optima") {
  REQUIRE(fitness_threshold(1.0, 0.01) == Approx(1.01));
  REQUIRE(fitness_threshold(-1.0, 0.01) == Approx(-0.99));
  REQUIRE(fitness_threshold(0.0, 0.01) == Approx(0.01));
  REQUIRE(fitness_reached(1.009, 1.0, 0.01));
  REQUIRE_FALSE(fitness_reached(1.011, 1.0, 0.01));
  REQUIRE(fitness_reached(-0.995, -1.0, 0.01));
}

TEST_CASE("identical settings produce bit-identical results") {
  const Problem p = bench::make_benchmark("spring");
  GnoweeSettings s;
  s.seed = 42;
  s.criteria.max_evals = 4000;
  const RunResult a = run(p, s);
  const RunResult b = run(p, s);
  REQUIRE(a.best_fitness == b.best_fitness);
  REQUIRE(a.total_evals == b.total_evals);
  REQUIRE(a.termination == b.termination);
  REQUIRE(a.best_vector == b.best_vector);
  REQUIRE(a.history.size() == b.history.size());
  for (std::size_t i = 0; i < a.history.size(); ++i) {
    REQUIRE(a.history[i].eval_count == b.history[i].eval_count);
    REQUIRE(a.history[i].best_fitness == b.history[i].best_fitness);
  }
}

TEST_CASE("history is strictly improving and strictly ordered in evaluations") {
  const Problem p = bench::make_benchmark("spring");
  GnoweeSettings s;
  s.seed = 5;
  const RunResult r = run(p, s);
  REQUIRE_FALSE(r.history.empty());
  for (std::size_t i = 1; i < r.history.size(); ++i) {
    REQUIRE(r.history[i].best_fitness < r.history[i - 1].best_fitness);
    REQUIRE(r.history[i].eval_count > r.history[i - 1].eval_count);
  }
}

TEST_CASE("a convex quadratic converges for one hundred consecutive seeds") {
  const Problem p = quadratic_1d();
  int reached = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GnoweeSettings s;
    s.seed = seed;
    s.criteria.max_evals = 30000;
    const RunResult r = run(p, s);
    if (r.termination == Termination::FitnessReached) ++reached;
  }
  REQUIRE(reached == 100);
}
