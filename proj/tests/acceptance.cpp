// Acceptance suite: end-to-end checks of the sampler law, the campaign
// statistics, the combinatorial operator examples and the reporting layer.
// Prints one line per criterion and exits with the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gnowee/benchmarks.hpp"
#include "gnowee/engine.hpp"
#include "gnowee/harness.hpp"
#include "gnowee/levy.hpp"
#include "gnowee/operators.hpp"
#include "support/oracles.hpp"

using namespace gnowee;
using gnowee::testing::brute_force_tsp_optimum;
using gnowee::testing::tail_slope;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

int hw_jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// --------------------------------------------------------------------------
// 1. Mantegna sampler tail law.
// --------------------------------------------------------------------------
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool pass = true;
  for (const auto& [alpha, expected] : std::vector<std::pair<double, double>>{{0.5, -0.5}, {1.0, -1.0}}) {
    Mt19937Stream rng(2026);
    std::vector<double> mags;
    mags.reserve(1000000);
    const LevyParams params{alpha, 1.0, 1};
    for (int i = 0; i < 1000000; ++i) mags.push_back(std::fabs(levy_sample(params, rng)));
    const double slope = tail_slope(std::move(mags), 0.90, 0.999);
    detail << "alpha=" << alpha << " slope=" << fmt("%.3f", slope) << "  ";
    if (std::fabs(slope - expected) > 0.15) pass = false;
  }
  const double elapsed = seconds_since(t0);
  detail << "runtime=" << fmt("%.1f", elapsed) << "s";
  if (elapsed >= 30.0) pass = false;
  report(1, "stable tail slope over 1e6 samples", pass, detail.str());
}

// --------------------------------------------------------------------------
// 2. sigma_x closed form at alpha = 1.
// --------------------------------------------------------------------------
void criterion_2() {
  const double s = mantegna_sigma_x(1.0);
  report(2, "sigma_x(1) == 1 to 1e-12", std::fabs(s - 1.0) <= 1e-12, fmt("sigma_x=%.17g", s));
}

// --------------------------------------------------------------------------
// 3. FOM audit on the reported spring campaign values.
// --------------------------------------------------------------------------
void criterion_3() {
  const double fom = compute_fom(0.012763, 0.012665, 4738.0, 1836.0);
  const bool pass = std::fabs(fom - 79.0) <= 0.02 * 79.0;
  report(3, "FOM audit of reported spring statistics", pass, fmt("fom=%.3f (expect 79.0 +/- 2%%)", fom));
}

// --------------------------------------------------------------------------
// 4. Spring campaign reproduction at desk scale.
// --------------------------------------------------------------------------
void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  const Problem p = bench::make_benchmark("spring");
  GnoweeSettings s;
  s.seed = 20260810;
  const CampaignResult campaign = run_trials(p, s, 100, hw_jobs());
  const double elapsed = seconds_since(t0);

  const bool mean_ok = std::fabs(campaign.stats.f_avg - 0.012665) <= 0.01 * 0.012665;
  const bool premature_ok = campaign.stats.premature_fraction <= 0.05;
  const bool evals_ok = campaign.stats.n_avg < 15000.0;
  const bool time_ok = elapsed < 300.0;
  std::ostringstream detail;
  detail << "f_avg=" << fmt("%.6f", campaign.stats.f_avg)
         << " premature=" << fmt("%.0f", campaign.stats.premature_fraction * 100) << "%"
         << " n_avg=" << fmt("%.0f", campaign.stats.n_avg) << " fom=" << fmt("%.1f", campaign.stats.fom_avg)
         << " runtime=" << fmt("%.1f", elapsed) << "s";
  report(4, "spring campaign (100 trials, defaults)", mean_ok && premature_ok && evals_ok && time_ok,
         detail.str());
}

// --------------------------------------------------------------------------
// 5. Continuous pressure vessel convergence rate.
// --------------------------------------------------------------------------
void criterion_5() {
  const Problem p = bench::make_benchmark("pressure-vessel");
  GnoweeSettings s;
  s.seed = 555;
  const CampaignResult campaign = run_trials(p, s, 100, hw_jobs());
  int reached = 0;
  for (const auto& t : campaign.trials) {
    if (t.termination == Termination::FitnessReached) ++reached;
  }
  report(5, "pressure vessel: FitnessReached trials >= 90/100", reached >= 90,
         "reached=" + std::to_string(reached) + "/100, f_avg=" + fmt("%.2f", campaign.stats.f_avg));
}

// --------------------------------------------------------------------------
// 6. Analytic suite convergence; Griewank/Rastrigin monotone + in budget.
// --------------------------------------------------------------------------
void criterion_6() {
  bool pass = true;
  std::ostringstream detail;
  for (const char* name : {"ackley-3d", "de-jong-4d", "easom-2d", "rosenbrock-5d"}) {
    const Problem p = bench::make_benchmark(name);
    GnoweeSettings s;
    s.seed = 606;
    const CampaignResult campaign = run_trials(p, s, 100, hw_jobs());
    int reached = 0;
    for (const auto& t : campaign.trials) {
      if (t.termination == Termination::FitnessReached) ++reached;
    }
    detail << name << "=" << reached << "/100  ";
    if (reached < 95) pass = false;
  }
  for (const char* name : {"griewank-6d", "rastrigin-5d"}) {
    const Problem p = bench::make_benchmark(name);
    GnoweeSettings s;
    s.seed = 607;
    const CampaignResult campaign = run_trials(p, s, 100, hw_jobs());
    bool monotone = true, budget = true;
    for (const auto& t : campaign.trials) {
      if (t.evals > s.criteria.max_evals) budget = false;
      for (std::size_t i = 1; i < t.history.size(); ++i) {
        if (!(t.history[i].best_fitness < t.history[i - 1].best_fitness)) monotone = false;
      }
    }
    detail << name << (monotone && budget ? "=monotone,in-budget  " : "=VIOLATION  ");
    if (!monotone || !budget) pass = false;
  }
  report(6, "analytic suite convergence", pass, detail.str());
}

// --------------------------------------------------------------------------
// 7. Mixed-integer pressure vessel.
// --------------------------------------------------------------------------
void criterion_7() {
  const Problem p = bench::make_benchmark("mi-pressure-vessel");
  GnoweeSettings s;
  s.seed = 707;
  const CampaignResult campaign = run_trials(p, s, 100, hw_jobs());
  int reached = 0;
  bool multiples = true;
  for (const auto& t : campaign.trials) {
    if (t.termination == Termination::FitnessReached) ++reached;
    for (std::size_t i : {std::size_t{2}, std::size_t{3}}) {
      if (std::fmod(t.best_vector.values[i], 0.0625) != 0.0) multiples = false;
    }
  }
  report(7, "MI pressure vessel: thickness multiples + >= 90/100 reached",
         multiples && reached >= 90,
         "reached=" + std::to_string(reached) + "/100, multiples=" + (multiples ? "yes" : "NO"));
}

// --------------------------------------------------------------------------
// 8. TSP: oracle equivalence at 8 cities and eil51 behavior.
// --------------------------------------------------------------------------
void criterion_8() {
  int hits = 0, runs = 0;
  Mt19937Stream gen(20240808);
  for (int inst_id = 0; inst_id < 20; ++inst_id) {
    auto inst = std::make_shared<TspInstance>();
    inst->name = "rand8-" + std::to_string(inst_id);
    for (int c = 0; c < 8; ++c) {
      inst->coords.push_back({gen.uniform(0.0, 100.0), gen.uniform(0.0, 100.0)});
    }
    const long optimum = brute_force_tsp_optimum(*inst);
    const Problem p = bench::make_tsp_problem(inst, inst->name);
    for (int seed = 0; seed < 5; ++seed) {
      GnoweeSettings s;
      s.seed = static_cast<std::uint64_t>(1000 * inst_id + seed);
      s.criteria.max_evals = 20000;
      s.criteria.known_optimum = static_cast<double>(optimum);
      s.criteria.fitness_rel_tol = 1e-12;  // stop early only on the exact optimum
      const RunResult r = run(p, s);
      ++runs;
      if (static_cast<long>(r.best_fitness) == optimum) ++hits;
    }
  }
  const bool small_ok = hits * 100 >= runs * 95;

  const Problem eil = bench::make_benchmark("eil51");
  GnoweeSettings s;
  s.seed = 51;
  const CampaignResult campaign = run_trials(eil, s, 10, hw_jobs());
  bool improving = true;
  for (const auto& t : campaign.trials) {
    for (std::size_t i = 1; i < t.history.size(); ++i) {
      if (!(t.history[i].best_fitness < t.history[i - 1].best_fitness)) improving = false;
    }
  }
  const bool eil_ok = campaign.stats.n_avg < 60000.0 && improving;
  std::ostringstream detail;
  detail << "8-city optimum hits=" << hits << "/" << runs
         << ", eil51 n_avg=" << fmt("%.0f", campaign.stats.n_avg)
         << " best=" << fmt("%.0f", campaign.stats.f_best)
         << " improving=" << (improving ? "yes" : "NO");
  report(8, "TSP oracle equivalence + eil51 behavior", small_ok && eil_ok, detail.str());
}

// --------------------------------------------------------------------------
// 9. Combinatorial operator golden examples.
// --------------------------------------------------------------------------
void criterion_9() {
  enum : int { A = 0, B = 1, C = 2, D = 3, E = 4, F = 5, G = 6, H = 7 };
  const std::vector<int> flight_parent = {A, H, B, D, G, F, C, E};
  bool pass = true;

  // Three-opt re-orderings for breaks H, G, C.
  const auto [c1, c2] = three_opt_children(flight_parent, 1, 4, 6);
  pass = pass && (c1 == std::vector<int>{A, H, F, C, B, D, G, E});
  pass = pass && (c2 == std::vector<int>{A, H, G, D, B, C, F, E});

  // Flight inversion with cuts H and G.
  pass = pass && (segment_reversal_child(flight_parent, 1, 3) ==
                  std::vector<int>{A, H, G, D, B, F, C, E});

  // Two-opt reconnection with breaks A and G.
  pass = pass && (segment_reversal_child(flight_parent, 0, 4) ==
                  std::vector<int>{A, G, D, B, H, F, C, E});

  // Follower-guided inversion exchange, both steps.
  const std::vector<int> p1 = {A, H, G, D, B, F, C, E};
  const std::vector<int> p2 = {E, A, G, C, H, B, D, F};
  const auto step1 = follower_inversion_child(p1, p2, 1);
  pass = pass && step1 && step1->first == std::vector<int>{A, H, B, D, G, F, C, E};
  if (step1) {
    const long pos = position_of(p2, step1->second);
    const auto step2 = follower_inversion_child(p2, p1, static_cast<std::size_t>(pos));
    pass = pass && step2 && step2->first == std::vector<int>{E, A, G, C, H, B, F, D};
  } else {
    pass = false;
  }
  report(9, "operator worked examples reproduce exactly", pass, "");
}

// --------------------------------------------------------------------------
// 10. Byte-identical reports for a repeated base seed.
// --------------------------------------------------------------------------
void criterion_10() {
  const Problem p = bench::make_benchmark("spring");
  GnoweeSettings s;
  s.seed = 1010;
  s.criteria.max_evals = 3000;
  const auto base = std::filesystem::temp_directory_path();
  const auto dir_a = base / "gnowee_acc_det_a";
  const auto dir_b = base / "gnowee_acc_det_b";
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
  write_report("spring", run_trials(p, s, 5, 1), dir_a);
  write_report("spring", run_trials(p, s, 5, 4), dir_b);

  bool identical = true;
  for (const char* file : {"summary.csv", "trials.csv", "convergence.csv"}) {
    std::ifstream a(dir_a / file, std::ios::binary), b(dir_b / file, std::ios::binary);
    std::ostringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    if (sa.str() != sb.str() || sa.str().empty()) identical = false;
  }
  report(10, "campaign reports are byte-identical for a repeated seed", identical, "");
}

// --------------------------------------------------------------------------
// 11. Invariant suite, 1000+ randomized cases per property.
// --------------------------------------------------------------------------
void criterion_11() {
  Mt19937Stream rng(1111);
  bool size_ok = true, monotone_ok = true, multiset_ok = true, bounds_ok = true, lhc_ok = true;

  // Permutation multiset preservation over the reversal/3-opt/inversion kernels.
  for (int round = 0; round < 1000; ++round) {
    const int n = 4 + static_cast<int>(rng.index(20));
    const auto perm = detail::random_permutation_int(n, rng);
    const auto other = detail::random_permutation_int(n, rng);
    const auto sorted_of = [](std::vector<int> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    const auto ident = sorted_of(perm);
    if (sorted_of(segment_reversal_child(perm, rng.index(static_cast<std::size_t>(n)),
                                         1 + rng.index(static_cast<std::size_t>(n)))) != ident) {
      multiset_ok = false;
    }
    auto breaks = rng.sample_without_replacement(3, static_cast<std::size_t>(n) - 1);
    std::sort(breaks.begin(), breaks.end());
    const auto [c1, c2] = three_opt_children(perm, breaks[0], breaks[1], breaks[2]);
    if (sorted_of(c1) != ident || sorted_of(c2) != ident) multiset_ok = false;
    const auto inv = follower_inversion_child(perm, other, rng.index(static_cast<std::size_t>(n)));
    if (inv && sorted_of(inv->first) != ident) multiset_ok = false;
  }

  // Population size, best-so-far monotonicity and candidate validity across
  // randomized operator + update rounds.
  const DesignSpace space({VariableSpec::continuous(-5.0, 5.0),
                           VariableSpec::discrete_set({0.0, 0.5, 1.0, 1.5, 2.0}),
                           VariableSpec::combinatorial(7)});
  Problem prob;
  prob.name = "invariants";
  prob.space = space;
  prob.objective = [](const DesignVector& v) {
    double s = v.values[0] * v.values[0] + v.values[1];
    for (std::size_t i = 0; i < v.perm.size(); ++i) {
      s += std::fabs(static_cast<double>(v.perm[i]) - static_cast<double>(i));
    }
    return s;
  };
  EvalCounter counter;
  auto seeds = uniform_initialize(space, 9, rng);
  Population pop;
  for (auto& v : seeds) pop.push_back(Member{v, evaluate(prob, v, counter)});
  Evaluation best = pop[rank_by_better(pop)[0]].eval;

  const OperatorFractions fr;
  const LevyParams levy{0.5, 1.0, 1};
  for (int round = 0; round < 1000; ++round) {
    std::vector<Candidate> cands;
    switch (round % 6) {
      case 0: cands = cont_levy_flight(space, pop, fr, levy, rng); break;
      case 1: cands = disc_levy_flight(space, pop, fr, levy, rng); break;
      case 2: cands = comb_levy_flight(space, pop, fr, levy, rng); break;
      case 3: cands = crossover(space, pop, fr, rng); break;
      case 4: cands = scatter_search(space, pop, fr, rng); break;
      default: cands = mutation(space, pop, fr, rng); break;
    }
    std::vector<EvaluatedCandidate> evaluated;
    for (auto& c : cands) {
      if (!validate(space, c.vec).ok) bounds_ok = false;
      evaluated.push_back(EvaluatedCandidate{c.parent, c.vec, evaluate(prob, c.vec, counter)});
    }
    const Evaluation before_best = best;
    population_update(pop, evaluated, round % 2 == 0, fr.f_mh, rng,
                      [&](std::size_t i, const DesignVector& v, const Evaluation& e) {
                        pop[i] = Member{v, e};
                        if (better(e, best)) best = e;
                      });
    if (pop.size() != 9) size_ok = false;
    if (better(before_best, best)) monotone_ok = false;  // best may never worsen
  }

  // Latin stratification on randomized spaces/counts.
  for (int round = 0; round < 1000; ++round) {
    const double lo = rng.uniform(-20.0, 10.0);
    const double hi = lo + rng.uniform(1.0, 30.0);
    const DesignSpace line({VariableSpec::continuous(lo, hi)});
    const std::size_t count = 2 + rng.index(12);
    const auto samples = lhc_initialize(line, count, rng);
    std::vector<int> hits(count, 0);
    for (const auto& s : samples) {
      auto k = static_cast<std::size_t>((s.values[0] - lo) / ((hi - lo) / count));
      hits[std::min(k, count - 1)]++;
    }
    for (int h : hits) {
      if (h != 1) lhc_ok = false;
    }
  }

  std::ostringstream detail;
  detail << "size=" << (size_ok ? "ok" : "FAIL") << " monotone=" << (monotone_ok ? "ok" : "FAIL")
         << " multiset=" << (multiset_ok ? "ok" : "FAIL") << " bounds=" << (bounds_ok ? "ok" : "FAIL")
         << " lhc=" << (lhc_ok ? "ok" : "FAIL");
  report(11, "invariant suite (1000+ cases each)",
         size_ok && monotone_ok && multiset_ok && bounds_ok && lhc_ok, detail.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures;
}
