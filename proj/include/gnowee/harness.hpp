#ifndef GNOWEE_HARNESS_HPP
#define GNOWEE_HARNESS_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "gnowee/engine.hpp"
#include "gnowee/errors.hpp"
#include "gnowee/problem.hpp"

namespace gnowee {

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double best_fitness = 0.0;
  bool best_feasible = false;
  std::uint64_t evals = 0;
  Termination termination = Termination::EvalBudget;
  std::vector<HistoryPoint> history;
  DesignVector best_vector;
};

struct TrialStats {
  int n_trials = 0;
  double f_avg = 0.0;
  double f_sigma = 0.0;
  double n_avg = 0.0;
  double n_sigma = 0.0;
  double f_best = 0.0;
  std::uint64_t n_best = 0;
  double premature_fraction = 0.0;
  double fom_avg = std::numeric_limits<double>::quiet_NaN();
  double fom_best = std::numeric_limits<double>::quiet_NaN();
};

struct CampaignResult {
  TrialStats stats;
  std::vector<TrialRecord> trials;
  std::optional<double> known_optimum;
};

// Relative fitness error times the 3-sigma evaluation count; the denominator
// falls back to absolute error for optima at zero.
inline double compute_fom(double f_avg, double f_opt, double n_avg, double n_sigma) {
  const double denom = (std::fabs(f_opt) > 1e-12) ? std::fabs(f_opt) : 1.0;
  return (f_avg - f_opt) / denom * (n_avg + 3.0 * n_sigma);
}

// n_trials independent runs on streams derived from (base seed, trial index);
// population-sigma aggregates; records keep per-trial convergence curves.
inline CampaignResult run_trials(const Problem& problem, const GnoweeSettings& settings,
                                 int n_trials, int jobs = 1) {
  if (n_trials < 1) throw InvalidArgument("run_trials: n_trials must be >= 1");
  settings.validate();

  CampaignResult result;
  result.trials.resize(static_cast<std::size_t>(n_trials));
  result.known_optimum =
      settings.criteria.known_optimum ? settings.criteria.known_optimum : problem.known_optimum;

  std::atomic<int> next{0};
  std::vector<std::pair<int, std::string>> failures;
  std::mutex failures_mutex;

  const auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_trials) break;
      GnoweeSettings trial_settings = settings;
      trial_settings.seed = Mt19937Stream::derive_seed(settings.seed, static_cast<std::uint64_t>(i));
      try {
        const RunResult r = run(problem, trial_settings);
        TrialRecord& rec = result.trials[static_cast<std::size_t>(i)];
        rec.trial = i;
        rec.seed = trial_settings.seed;
        rec.best_fitness = r.best_fitness;
        rec.best_feasible = r.best_feasible;
        rec.evals = r.total_evals;
        rec.termination = r.termination;
        rec.history = r.history;
        rec.best_vector = r.best_vector;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failures_mutex);
        failures.emplace_back(i, e.what());
      }
    }
  };

  const int n_workers = std::clamp(jobs, 1, n_trials);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  if (!failures.empty()) {
    auto worst = failures.front();
    for (const auto& f : failures) {
      if (f.first < worst.first) worst = f;
    }
    throw Error("trial " + std::to_string(worst.first) + " failed: " + worst.second);
  }

  TrialStats& s = result.stats;
  s.n_trials = n_trials;
  const double n = static_cast<double>(n_trials);
  double f_sum = 0.0, f_sq = 0.0, e_sum = 0.0, e_sq = 0.0;
  std::size_t best_trial = 0;
  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    const TrialRecord& r = result.trials[i];
    f_sum += r.best_fitness;
    f_sq += r.best_fitness * r.best_fitness;
    const double e = static_cast<double>(r.evals);
    e_sum += e;
    e_sq += e * e;
    const TrialRecord& b = result.trials[best_trial];
    const bool improves = (r.best_feasible != b.best_feasible) ? r.best_feasible
                                                               : (r.best_fitness < b.best_fitness);
    if (improves) best_trial = i;
  }
  s.f_avg = f_sum / n;
  s.f_sigma = std::sqrt(std::max(0.0, f_sq / n - s.f_avg * s.f_avg));
  s.n_avg = e_sum / n;
  s.n_sigma = std::sqrt(std::max(0.0, e_sq / n - s.n_avg * s.n_avg));
  s.f_best = result.trials[best_trial].best_fitness;
  s.n_best = result.trials[best_trial].evals;

  if (result.known_optimum) {
    const double k = *result.known_optimum;
    int premature = 0;
    for (const TrialRecord& r : result.trials) {
      const bool ok = r.best_feasible &&
                      fitness_reached(r.best_fitness, k, settings.criteria.fitness_rel_tol);
      if (!ok) ++premature;
    }
    s.premature_fraction = static_cast<double>(premature) / n;
    s.fom_avg = compute_fom(s.f_avg, k, s.n_avg, s.n_sigma);
    s.fom_best = compute_fom(s.f_best, k, static_cast<double>(s.n_best), 0.0);
  }
  return result;
}

// ---------------------------------------------------------------------------
// CSV reports
// ---------------------------------------------------------------------------

inline std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline const char* kSummaryHeader =
    "name,n_trials,f_avg,f_sigma,n_avg,n_sigma,f_best,n_best,premature_fraction,fom_avg,fom_best";

// Emits summary.csv (one row), trials.csv and convergence.csv under out_dir.
inline void write_report(const std::string& name, const CampaignResult& campaign,
                         const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error("write_report: cannot create '" + out_dir.string() + "': " + ec.message());

  const auto open = [&](const char* file) {
    std::ofstream out(out_dir / file, std::ios::binary);
    if (!out) throw Error("write_report: cannot open '" + (out_dir / file).string() + "'");
    return out;
  };

  {
    auto out = open("summary.csv");
    out << kSummaryHeader << "\n";
    const TrialStats& s = campaign.stats;
    out << name << ',' << s.n_trials << ',' << csv_double(s.f_avg) << ',' << csv_double(s.f_sigma)
        << ',' << csv_double(s.n_avg) << ',' << csv_double(s.n_sigma) << ',' << csv_double(s.f_best)
        << ',' << s.n_best << ',' << csv_double(s.premature_fraction) << ','
        << csv_double(s.fom_avg) << ',' << csv_double(s.fom_best) << "\n";
  }
  {
    auto out = open("trials.csv");
    out << "trial,seed,best_fitness,evals,termination\n";
    for (const TrialRecord& r : campaign.trials) {
      out << r.trial << ',' << r.seed << ',' << csv_double(r.best_fitness) << ',' << r.evals << ','
          << to_string(r.termination) << "\n";
    }
  }
  {
    auto out = open("convergence.csv");
    out << "trial,eval_count,best_fitness\n";
    for (const TrialRecord& r : campaign.trials) {
      for (const HistoryPoint& h : r.history) {
        out << r.trial << ',' << h.eval_count << ',' << csv_double(h.best_fitness) << "\n";
      }
    }
  }
}

// Minimal CSV reader for the audit command and report round-trips.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw ParseError("csv: missing column '" + name + "'");
  }
};

inline CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("csv: cannot open '" + path.string() + "'");
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (first) {
      t.header = fields;
      first = false;
    } else {
      t.rows.push_back(fields);
    }
  }
  if (first) throw ParseError("csv: empty file '" + path.string() + "'");
  return t;
}

}  // namespace gnowee

#endif  // GNOWEE_HARNESS_HPP
