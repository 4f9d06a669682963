#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "semcom/baselines.hpp"
#include "semcom/dinkelbach.hpp"
#include "semcom/errors.hpp"
#include "semcom/harness.hpp"
#include "semcom/parallel.hpp"
#include "semcom/scenario.hpp"

namespace {

using nlohmann::json;
using namespace semcom;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitConfig = 2;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + " is not valid JSON: " + e.what());
  }
}

json metrics_json(const Metrics& m, const PowerAllocation& p, const ReusePattern& r) {
  return json{{"eta", m.eta},
              {"v_total", m.v_total},
              {"e_total", m.e_total},
              {"e_encoding", m.e_encoding},
              {"e_transmit", m.e_transmit},
              {"feasible", m.feasible()},
              {"cue_value_ok", m.cue_value_ok},
              {"due_value_ok", m.due_value_ok},
              {"cue_power_ok", m.cue_power_ok},
              {"due_power_ok", m.due_power_ok},
              {"p_cue", p.p_cue},
              {"p_due", p.p_due},
              {"cue_of_due", r.cue_of_due}};
}

int cmd_generate(const std::string& config_path, const std::string& out_path, std::optional<std::size_t> trial) {
  const json cfg = read_json(config_path);
  if (!cfg.is_object()) throw ConfigError(config_path + ": expected a JSON object");
  ScenarioConfig sc;
  sc.params = params_from_json(cfg.contains("params") ? cfg["params"] : cfg, default_params());
  if (cfg.contains("master_seed")) sc.master_seed = cfg["master_seed"].get<std::uint64_t>();
  std::size_t t = cfg.value("trial", std::size_t{0});
  if (trial) t = *trial;
  require_valid(sc.params);
  save(generate(sc, t), out_path);
  return kExitOk;
}

int cmd_solve(const std::string& scenario_path, const std::string& trace_path, int max_iters, unsigned threads) {
  const Scenario s = load(scenario_path);
  SolverOptions opts;
  opts.max_iters = max_iters;
  opts.threads = threads;
  const SolveResult r = solve(s, opts);
  if (!trace_path.empty()) write_text(trace_path, trace_csv(r.trace));
  if (!r.feasible) {
    std::cout << json{{"status", "infeasible"}, {"reason", r.infeasible_reason}}.dump() << '\n';
    return kExitInfeasible;
  }
  json out = metrics_json(r.metrics, r.powers, r.pattern);
  out["status"] = "ok";
  out["iterations"] = r.trace.entries.size();
  out["termination"] = to_string(r.trace.reason);
  out["selected_iteration"] = r.selected_iteration;
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_baseline(const std::string& scenario_path, const std::string& scheme_name, std::uint64_t seed) {
  const Scenario s = load(scenario_path);
  const Scheme scheme = scheme_from_string(scheme_name);
  if (scheme == Scheme::kProposed) throw ConfigError("baseline scheme must be max_random or random_distance");
  const BaselineResult r =
      scheme == Scheme::kMaxRandom ? benchmark_max_random(s, seed) : benchmark_random_distance(s, seed);
  json out = metrics_json(r.metrics, r.powers, r.pattern);
  out["status"] = "ok";
  out["scheme"] = scheme_name;
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path, const std::string& trials_path,
              unsigned threads) {
  const SweepSpec spec = load_sweep_spec(config_path);
  const SweepOutput out = run_sweep(spec, threads == 0 ? default_threads() : threads);
  write_text(out_path, results_csv(out.results));
  if (!trials_path.empty()) write_text(trials_path, trials_csv(spec.sweep_param, out.records));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficient power allocation and spectrum reuse for D2D semantic communication"};
  app.require_subcommand(1);

  std::string config, out, scenario, trace, trials_out, scheme;
  std::optional<std::size_t> trial;
  int max_iters = 20;
  unsigned threads = 0;
  std::uint64_t seed = 1;

  auto* gen = app.add_subcommand("generate", "Draw a random scenario and write it as JSON");
  gen->add_option("--config", config, "JSON with params, master_seed and trial")->required();
  gen->add_option("--out", out, "Scenario file to write")->required();
  gen->add_option("--trial", trial, "Trial index (overrides the config)");

  auto* sol = app.add_subcommand("solve", "Run the proposed optimizer on a scenario");
  sol->add_option("--scenario", scenario, "Scenario file")->required();
  sol->add_option("--trace", trace, "Per-iteration trace CSV to write");
  sol->add_option("--max-iters", max_iters, "Outer iteration cap")->check(CLI::PositiveNumber);
  sol->add_option("--threads", threads, "Worker threads (default: SEMCOM_EE_THREADS or all cores)");

  auto* base = app.add_subcommand("baseline", "Run a benchmark scheme on a scenario");
  base->add_option("--scenario", scenario, "Scenario file")->required();
  base->add_option("--scheme", scheme, "max_random or random_distance")->required();
  base->add_option("--seed", seed, "Seed of the scheme's random choices");

  auto* sw = app.add_subcommand("sweep", "Monte-Carlo parameter sweep over all schemes");
  sw->add_option("--config", config, "Sweep config JSON")->required();
  sw->add_option("--out", out, "Results CSV to write")->required();
  sw->add_option("--trials-out", trials_out, "Per-trial CSV to write");
  sw->add_option("--threads", threads, "Worker threads (default: SEMCOM_EE_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) return cmd_generate(config, out, trial);
    if (*sol) return cmd_solve(scenario, trace, max_iters, threads == 0 ? default_threads() : threads);
    if (*base) return cmd_baseline(scenario, scheme, seed);
    if (*sw) return cmd_sweep(config, out, trials_out, threads);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
  } catch (const InvariantError& e) {
    std::cerr << "invalid scenario: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitConfig;
}
