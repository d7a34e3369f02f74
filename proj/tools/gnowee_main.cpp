// Command-line front end: list registered benchmarks, run campaigns, audit
// FOM values from a summary report.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gnowee/benchmarks.hpp"
#include "gnowee/config.hpp"
#include "gnowee/harness.hpp"

namespace {

std::optional<double> registered_optimum(const std::string& name) {
  for (const auto& info : gnowee::bench::list_benchmarks()) {
    if (info.name == name) return info.known_optimum;
  }
  return std::nullopt;
}

int cmd_list() {
  for (const auto& info : gnowee::bench::list_benchmarks()) {
    std::printf("%-22s %-14s dim=%-4zu", info.name.c_str(), info.kinds.c_str(), info.dimension);
    if (info.known_optimum) {
      std::printf(" optimum=%.9g", *info.known_optimum);
    } else {
      std::printf(" optimum=unknown");
    }
    if (!info.implemented) std::printf(" (not implemented)");
    std::printf("\n");
  }
  return 0;
}

int cmd_run(const gnowee::CampaignConfig& config) {
  const gnowee::Problem problem = gnowee::load_problem(config);
  const gnowee::CampaignResult campaign =
      gnowee::run_trials(problem, config.settings, config.trials, config.effective_jobs());
  gnowee::write_report(problem.name, campaign, config.out);

  const gnowee::TrialStats& s = campaign.stats;
  std::printf("%s\n", gnowee::kSummaryHeader);
  std::printf("%s,%d,%s,%s,%s,%s,%s,%llu,%s,%s,%s\n", problem.name.c_str(), s.n_trials,
              gnowee::csv_double(s.f_avg).c_str(), gnowee::csv_double(s.f_sigma).c_str(),
              gnowee::csv_double(s.n_avg).c_str(), gnowee::csv_double(s.n_sigma).c_str(),
              gnowee::csv_double(s.f_best).c_str(), static_cast<unsigned long long>(s.n_best),
              gnowee::csv_double(s.premature_fraction).c_str(),
              gnowee::csv_double(s.fom_avg).c_str(), gnowee::csv_double(s.fom_best).c_str());
  std::printf("reports: %s/{summary,trials,convergence}.csv\n", config.out.c_str());
  return 0;
}

int cmd_fom(const std::string& summary_path) {
  const gnowee::CsvTable table = gnowee::read_csv(summary_path);
  const auto name_col = table.column("name");
  const auto favg_col = table.column("f_avg");
  const auto navg_col = table.column("n_avg");
  const auto nsig_col = table.column("n_sigma");
  const auto fbest_col = table.column("f_best");
  const auto nbest_col = table.column("n_best");
  for (const auto& row : table.rows) {
    const std::string& name = row.at(name_col);
    const auto opt = registered_optimum(name);
    if (!opt) {
      throw gnowee::ConfigError("fom: no registered optimum for problem '" + name + "'");
    }
    const double fom_avg = gnowee::compute_fom(std::stod(row.at(favg_col)), *opt,
                                               std::stod(row.at(navg_col)), std::stod(row.at(nsig_col)));
    const double fom_best = gnowee::compute_fom(std::stod(row.at(fbest_col)), *opt,
                                                std::stod(row.at(nbest_col)), 0.0);
    std::printf("%s fom_avg=%.6g fom_best=%.6g\n", name.c_str(), fom_avg, fom_best);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gnowee hybrid metaheuristic optimizer"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List registered benchmark problems");

  auto* run = app.add_subcommand("run", "Run an optimization campaign and write CSV reports");
  std::string problem, problem_file, config_file, out, init_scheme, bias;
  int trials = 0, population = 0, jobs = 0;
  std::uint64_t seed = 0, max_evals = 0, stall_evals = 0;
  double stall_tol = 0, fitness_tol = 0, alpha = 0, gamma = 0, beta = 0;
  double f_levy = 0, f_elite = 0, f_mh = 0, f_mutation = 0;
  run->add_option("--problem", problem, "Registered benchmark name");
  run->add_option("--problem-file", problem_file, "Problem-definition JSON file");
  run->add_option("--config", config_file, "Campaign config JSON file");
  run->add_option("--trials", trials, "Number of independent trials");
  run->add_option("--seed", seed, "Base seed; trial streams derive from it");
  run->add_option("--out", out, "Report output directory");
  run->add_option("--jobs", jobs, "Concurrent trials (0 = all processors)");
  run->add_option("--max-evals", max_evals, "Evaluation budget per trial");
  run->add_option("--stall-evals", stall_evals, "Stall window in evaluations");
  run->add_option("--stall-tol", stall_tol, "Stall improvement tolerance");
  run->add_option("--fitness-tol", fitness_tol, "Relative fitness convergence tolerance");
  run->add_option("--population", population, "Population size");
  run->add_option("--alpha", alpha, "Levy distribution index");
  run->add_option("--gamma", gamma, "Levy scale");
  run->add_option("--beta", beta, "Step size divisor");
  run->add_option("--f-levy", f_levy, "Levy flight parent fraction");
  run->add_option("--f-elite", f_elite, "Elite fraction");
  run->add_option("--f-mh", f_mh, "Metropolis-Hastings acceptance fraction");
  run->add_option("--f-mutation", f_mutation, "Mutation mask zero-probability");
  run->add_option("--init", init_scheme, "Initialization scheme (lhc|uniform)");
  run->add_option("--tsp-distance-bias", bias, "Distance-biased TSP cuts (on|off)");

  auto* fom = app.add_subcommand("fom", "Recompute the figure of merit from a summary CSV");
  std::string summary_path;
  fom->add_option("summary", summary_path, "Path to summary.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) return cmd_list();
    if (fom->parsed()) return cmd_fom(summary_path);

    // Flags become a merge patch; only options the user actually passed
    // override the config file, which overrides the defaults.
    gnowee::json flags = gnowee::json::object();
    const auto set = [&](const char* opt, const char* key, const gnowee::json& value) {
      if (run->count(opt) > 0) flags[gnowee::json::json_pointer(key)] = value;
    };
    set("--problem", "/problem", problem);
    set("--problem-file", "/problem_file", problem_file);
    set("--trials", "/trials", trials);
    set("--seed", "/seed", seed);
    set("--out", "/out", out);
    set("--jobs", "/jobs", jobs);
    set("--max-evals", "/settings/criteria/max_evals", max_evals);
    set("--stall-evals", "/settings/criteria/stall_evals", stall_evals);
    set("--stall-tol", "/settings/criteria/stall_tol", stall_tol);
    set("--fitness-tol", "/settings/criteria/fitness_rel_tol", fitness_tol);
    set("--population", "/settings/population", population);
    set("--alpha", "/settings/levy/alpha", alpha);
    set("--gamma", "/settings/levy/gamma", gamma);
    set("--beta", "/settings/fractions/beta", beta);
    set("--f-levy", "/settings/fractions/f_levy", f_levy);
    set("--f-elite", "/settings/fractions/f_elite", f_elite);
    set("--f-mh", "/settings/fractions/f_mh", f_mh);
    set("--f-mutation", "/settings/fractions/f_mutation", f_mutation);
    set("--init", "/settings/init", init_scheme);
    if (run->count("--tsp-distance-bias") > 0) {
      if (bias != "on" && bias != "off") {
        throw gnowee::ConfigError("--tsp-distance-bias expects 'on' or 'off'");
      }
      flags[gnowee::json::json_pointer("/settings/tsp_distance_bias")] = (bias == "on");
    }

    const std::optional<std::string> cfg =
        config_file.empty() ? std::nullopt : std::optional<std::string>(config_file);
    return cmd_run(gnowee::resolve_campaign(cfg, flags));
  } catch (const gnowee::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gnowee::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
