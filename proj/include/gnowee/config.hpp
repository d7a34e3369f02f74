#ifndef GNOWEE_CONFIG_HPP
#define GNOWEE_CONFIG_HPP

#include <fstream>
#include <optional>
#include <string>
#include <thread>

#include <json.hpp>

#include "gnowee/benchmarks.hpp"
#include "gnowee/engine.hpp"
#include "gnowee/errors.hpp"
#include "gnowee/problem.hpp"
#include "gnowee/tsplib.hpp"

namespace gnowee {

using nlohmann::json;

struct CampaignConfig {
  std::string problem;       // registered benchmark name, or
  std::string problem_file;  // problem-definition file path
  int trials = 100;
  std::uint64_t seed = 0;
  std::string out = "results";
  int jobs = 0;  // 0 = hardware concurrency
  GnoweeSettings settings;

  int effective_jobs() const {
    if (jobs > 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }
};

// Full defaults; flag/file overrides are RFC 7386 merge patches on top.
inline json default_campaign_json() {
  return json{
      {"problem", ""},
      {"problem_file", ""},
      {"trials", 100},
      {"seed", 0},
      {"out", "results"},
      {"jobs", 0},
      {"settings",
       {{"population", 25},
        {"init", "lhc"},
        {"tsp_distance_bias", false},
        {"levy", {{"alpha", 0.5}, {"gamma", 1.0}, {"n", 1}}},
        {"fractions",
         {{"f_levy", 1.0}, {"f_elite", 0.2}, {"f_mh", 0.2}, {"f_mutation", 0.2}, {"beta", 10.0}}},
        {"criteria",
         {{"max_evals", 200000},
          {"stall_evals", 10000},
          {"stall_tol", 1e-6},
          {"fitness_rel_tol", 0.01}}}}},
  };
}

namespace detail {

template <typename T>
T get_field(const json& j, const std::string& dotted) {
  const json* cur = &j;
  std::size_t start = 0;
  for (;;) {
    const auto dot = dotted.find('.', start);
    const std::string key = dotted.substr(start, dot - start);
    const auto it = cur->find(key);
    if (it == cur->end()) throw ConfigError("config: missing key '" + dotted + "'");
    cur = &*it;
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  try {
    return cur->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config: key '" + dotted + "': " + e.what());
  }
}

}  // namespace detail

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config: '" + path + "': " + e.what());
  }
}

inline CampaignConfig parse_campaign(const json& j) {
  using detail::get_field;
  CampaignConfig c;
  c.problem = get_field<std::string>(j, "problem");
  c.problem_file = get_field<std::string>(j, "problem_file");
  c.trials = get_field<int>(j, "trials");
  c.seed = get_field<std::uint64_t>(j, "seed");
  c.out = get_field<std::string>(j, "out");
  c.jobs = get_field<int>(j, "jobs");
  c.settings.population = get_field<int>(j, "settings.population");
  const std::string init = get_field<std::string>(j, "settings.init");
  if (init == "lhc") {
    c.settings.init = InitScheme::Lhc;
  } else if (init == "uniform") {
    c.settings.init = InitScheme::Uniform;
  } else {
    throw ConfigError("config: key 'settings.init': expected 'lhc' or 'uniform', got '" + init + "'");
  }
  c.settings.tsp_distance_bias = get_field<bool>(j, "settings.tsp_distance_bias");
  c.settings.levy.alpha = get_field<double>(j, "settings.levy.alpha");
  c.settings.levy.gamma = get_field<double>(j, "settings.levy.gamma");
  c.settings.levy.n = get_field<int>(j, "settings.levy.n");
  c.settings.fractions.f_levy = get_field<double>(j, "settings.fractions.f_levy");
  c.settings.fractions.f_elite = get_field<double>(j, "settings.fractions.f_elite");
  c.settings.fractions.f_mh = get_field<double>(j, "settings.fractions.f_mh");
  c.settings.fractions.f_mutation = get_field<double>(j, "settings.fractions.f_mutation");
  c.settings.fractions.beta = get_field<double>(j, "settings.fractions.beta");
  c.settings.criteria.max_evals = get_field<std::uint64_t>(j, "settings.criteria.max_evals");
  c.settings.criteria.stall_evals = get_field<std::uint64_t>(j, "settings.criteria.stall_evals");
  c.settings.criteria.stall_tol = get_field<double>(j, "settings.criteria.stall_tol");
  c.settings.criteria.fitness_rel_tol = get_field<double>(j, "settings.criteria.fitness_rel_tol");
  const auto& crit = j.at("settings").at("criteria");
  if (crit.contains("known_optimum") && !crit.at("known_optimum").is_null()) {
    c.settings.criteria.known_optimum = detail::get_field<double>(j, "settings.criteria.known_optimum");
  }
  c.settings.seed = c.seed;
  try {
    c.settings.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.trials < 1) throw ConfigError("config: key 'trials': must be >= 1");
  return c;
}

// Precedence: defaults < config file < flags.
inline CampaignConfig resolve_campaign(const std::optional<std::string>& config_path,
                                       const json& flag_overrides) {
  json effective = default_campaign_json();
  if (config_path) effective.merge_patch(load_json_file(*config_path));
  effective.merge_patch(flag_overrides);
  return parse_campaign(effective);
}

// Problem-definition file: a design space bound to a registered objective by
// name, or to a TSPLIB file via objective "tsp".
inline Problem load_problem_file(const std::string& path) {
  const json j = load_json_file(path);
  const std::string objective = detail::get_field<std::string>(j, "objective");
  std::string name = j.value("name", std::string{});

  if (objective == "tsp") {
    const std::string tsp_path = detail::get_field<std::string>(j, "tsp_file");
    auto inst = std::make_shared<TspInstance>(load_tsplib(tsp_path));
    if (name.empty()) name = inst->name.empty() ? "tsp" : inst->name;
    Problem p = bench::make_tsp_problem(inst, name);
    if (j.contains("known_optimum") && !j.at("known_optimum").is_null()) {
      p.known_optimum = detail::get_field<double>(j, "known_optimum");
    }
    return p;
  }

  if (!j.contains("variables") || !j.at("variables").is_array() || j.at("variables").empty()) {
    throw ConfigError("config: '" + path + "': key 'variables': expected a non-empty array");
  }
  std::vector<VariableSpec> vars;
  for (const auto& vj : j.at("variables")) {
    const std::string kind = vj.value("kind", std::string{});
    try {
      if (kind == "continuous") {
        vars.push_back(VariableSpec::continuous(vj.at("lower").get<double>(),
                                                vj.at("upper").get<double>()));
      } else if (kind == "integer") {
        vars.push_back(
            VariableSpec::integer(vj.at("lower").get<double>(), vj.at("upper").get<double>()));
      } else if (kind == "binary") {
        vars.push_back(VariableSpec::binary());
      } else if (kind == "discrete") {
        vars.push_back(VariableSpec::discrete_set(vj.at("values").get<std::vector<double>>()));
      } else if (kind == "permutation") {
        vars.push_back(
            VariableSpec::combinatorial(vj.at("length").get<int>(), vj.value("looping", true)));
      } else {
        throw ConfigError("config: '" + path + "': unknown variable kind '" + kind + "'");
      }
    } catch (const json::exception& e) {
      throw ConfigError("config: '" + path + "': variable entry: " + e.what());
    } catch (const InvalidArgument& e) {
      throw ConfigError("config: '" + path + "': variable entry: " + e.what());
    }
  }

  const bench::ObjectiveBundle bundle = bench::benchmark_objective(objective);
  DesignSpace space(std::move(vars));
  if (bundle.arity && space.size() != *bundle.arity) {
    throw ConfigError("config: '" + path + "': objective '" + objective + "' requires " +
                      std::to_string(*bundle.arity) + " variables, got " +
                      std::to_string(space.size()));
  }
  Problem p;
  p.name = name.empty() ? objective : name;
  p.space = std::move(space);
  p.objective = bundle.objective;
  p.inequality = bundle.inequality;
  if (j.contains("known_optimum") && !j.at("known_optimum").is_null()) {
    p.known_optimum = detail::get_field<double>(j, "known_optimum");
  }
  return p;
}

inline Problem load_problem(const CampaignConfig& config) {
  const bool has_name = !config.problem.empty();
  const bool has_file = !config.problem_file.empty();
  if (has_name == has_file) {
    throw ConfigError("config: exactly one of 'problem' and 'problem_file' must be set");
  }
  return has_name ? bench::make_benchmark(config.problem) : load_problem_file(config.problem_file);
}

}  // namespace gnowee

#endif  // GNOWEE_CONFIG_HPP
