#include "semcom/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "semcom/baselines.hpp"
#include "semcom/errors.hpp"
#include "semcom/model.hpp"
#include "semcom/parallel.hpp"
#include "semcom/rng.hpp"
#include "semcom/scenario.hpp"

namespace semcom {
namespace {

using nlohmann::json;

std::size_t as_count(const std::string& name, double value) {
  if (!(value >= 1.0) || value != std::floor(value) || value > 1e6)
    throw ConfigError("sweep value for " + name + " must be a positive integer, got " + format_number(value));
  return static_cast<std::size_t>(value);
}

TrialRecord run_scheme(const Scenario& scenario, const SweepPoint& point, Scheme scheme, std::uint64_t seed) {
  TrialRecord r;
  r.scheme = scheme;
  switch (scheme) {
    case Scheme::kProposed: {
      SolverOptions opts = point.solver;
      opts.threads = 1;
      opts.pair.seed = seed;
      const SolveResult res = solve(scenario, opts);
      r.iterations = static_cast<int>(res.trace.entries.size());
      if (!res.feasible) return r;
      r.solved = true;
      r.feasible = res.metrics.feasible();
      r.eta = res.metrics.eta;
      r.v_total = res.metrics.v_total;
      r.e_total = res.metrics.e_total;
      return r;
    }
    case Scheme::kMaxRandom:
    case Scheme::kRandomDistance: {
      const BaselineResult res = scheme == Scheme::kMaxRandom ? benchmark_max_random(scenario, seed)
                                                              : benchmark_random_distance(scenario, seed);
      r.solved = true;
      r.feasible = res.metrics.feasible();
      r.eta = res.metrics.eta;
      r.v_total = res.metrics.v_total;
      r.e_total = res.metrics.e_total;
      return r;
    }
  }
  return r;
}

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kProposed: return "proposed";
    case Scheme::kMaxRandom: return "max_random";
    case Scheme::kRandomDistance: return "random_distance";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "proposed") return Scheme::kProposed;
  if (name == "max_random") return Scheme::kMaxRandom;
  if (name == "random_distance") return Scheme::kRandomDistance;
  throw ConfigError("unknown scheme '" + name + "' (expected proposed, max_random or random_distance)");
}

SweepPoint apply_sweep_value(const SweepSpec& spec, double value) {
  SweepPoint p{spec.params, spec.solver};
  const std::string& name = spec.sweep_param;
  if (name == "M")
    p.params.num_cues = as_count(name, value);
  else if (name == "N")
    p.params.num_dues = as_count(name, value);
  else if (name == "K")
    p.params.num_services = as_count(name, value);
  else if (name == "pmax_cue_dbm")
    p.params.pmax_cue_w = dbm_to_watts(value);
  else if (name == "pmax_due_dbm")
    p.params.pmax_due_w = dbm_to_watts(value);
  else if (name == "vmin")
    p.params.vmin_cue = p.params.vmin_due = value;
  else if (name == "iterations")
    p.solver.max_iters = static_cast<int>(as_count(name, value));
  else
    throw ConfigError("unknown sweep_param '" + name + "'");
  if (auto v = check_params(p.params); !v.empty())
    throw ConfigError("at " + name + "=" + format_number(value) + ": " + v.front());
  check_options(p.solver);
  const bool baselines = std::any_of(spec.schemes.begin(), spec.schemes.end(),
                                     [](Scheme s) { return s != Scheme::kProposed; });
  if (baselines && p.params.num_dues > p.params.num_cues)
    throw ConfigError("at " + name + "=" + format_number(value) + ": baselines need N <= M");
  return p;
}

void check_spec(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep values must not be empty");
  if (spec.trials == 0) throw ConfigError("trials must be positive");
  if (spec.schemes.empty()) throw ConfigError("at least one scheme is required");
  for (double v : spec.values) apply_sweep_value(spec, v);
}

SweepSpec sweep_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("sweep config must be a JSON object");
  SweepSpec spec;
  try {
    spec.sweep_param = j.at("sweep_param").get<std::string>();
    spec.values = j.at("values").get<std::vector<double>>();
    if (j.contains("trials")) spec.trials = j["trials"].get<std::size_t>();
    if (j.contains("master_seed")) spec.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("schemes")) {
      spec.schemes.clear();
      for (const auto& s : j["schemes"]) spec.schemes.push_back(scheme_from_string(s.get<std::string>()));
    }
    if (j.contains("params")) spec.params = params_from_json(j["params"], spec.params);
    if (j.contains("solver")) {
      const json& s = j["solver"];
      if (s.contains("max_iters")) spec.solver.max_iters = s["max_iters"].get<int>();
      if (s.contains("epsilon")) spec.solver.epsilon = s["epsilon"].get<double>();
      if (s.contains("pair_rounds")) spec.solver.pair.rounds = s["pair_rounds"].get<int>();
      if (s.contains("coincide_iters")) spec.solver.pair.max_coincide_iters = s["coincide_iters"].get<int>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed sweep config: ") + e.what());
  }
  check_spec(spec);
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return sweep_spec_from_json(j);
}

std::uint64_t scheme_seed(std::uint64_t master_seed, double value, Scheme scheme, std::size_t trial) {
  return mix_seed({master_seed, std::bit_cast<std::uint64_t>(value), static_cast<std::uint64_t>(scheme), trial});
}

SweepOutput run_sweep(const SweepSpec& spec, unsigned threads) {
  check_spec(spec);
  std::vector<SweepPoint> points;
  for (double v : spec.values) points.push_back(apply_sweep_value(spec, v));

  const std::size_t per_point = spec.trials * spec.schemes.size();
  SweepOutput out;
  out.records.resize(spec.values.size() * per_point);
  parallel_for(spec.values.size() * spec.trials, threads, [&](std::size_t task) {
    const std::size_t vi = task / spec.trials;
    const std::size_t t = task % spec.trials;
    const Scenario scenario = generate({points[vi].params, spec.master_seed, spec.trials}, t);
    for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
      const Scheme scheme = spec.schemes[si];
      TrialRecord r = run_scheme(scenario, points[vi], scheme, scheme_seed(spec.master_seed, spec.values[vi], scheme, t));
      r.value = spec.values[vi];
      r.trial = t;
      out.records[vi * per_point + si * spec.trials + t] = r;
    }
  });
  out.results = aggregate(spec, out.records);
  return out;
}

std::vector<SweepResult> aggregate(const SweepSpec& spec, const std::vector<TrialRecord>& records) {
  std::vector<SweepResult> results;
  for (double value : spec.values) {
    for (Scheme scheme : spec.schemes) {
      SweepResult r;
      r.sweep_param = spec.sweep_param;
      r.value = value;
      r.scheme = scheme;
      std::vector<const TrialRecord*> solved;
      std::size_t feasible = 0;
      double iters = 0.0;
      // Records are visited in their stored (trial) order, so sums are
      // reproducible regardless of how the trials were scheduled.
      for (const auto& rec : records) {
        if (rec.value != value || rec.scheme != scheme) continue;
        ++r.trials;
        iters += rec.iterations;
        if (rec.feasible) ++feasible;
        if (rec.solved) solved.push_back(&rec);
      }
      if (r.trials == 0) continue;
      r.feasible_fraction = static_cast<double>(feasible) / static_cast<double>(r.trials);
      r.iters_mean = iters / static_cast<double>(r.trials);
      if (solved.empty()) {
        r.eta_mean = r.eta_std = r.v_mean = r.e_mean = std::nan("");
      } else {
        const auto n = static_cast<double>(solved.size());
        for (const auto* rec : solved) {
          r.eta_mean += rec->eta;
          r.v_mean += rec->v_total;
          r.e_mean += rec->e_total;
        }
        r.eta_mean /= n;
        r.v_mean /= n;
        r.e_mean /= n;
        double ss = 0.0;
        for (const auto* rec : solved) ss += (rec->eta - r.eta_mean) * (rec->eta - r.eta_mean);
        r.eta_std = solved.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
      }
      results.push_back(r);
    }
  }
  return results;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string results_csv(const std::vector<SweepResult>& results) {
  std::ostringstream os;
  os << kResultsHeader << '\n';
  for (const auto& r : results) {
    os << r.sweep_param << ',' << format_number(r.value) << ',' << to_string(r.scheme) << ',' << r.trials << ','
       << format_number(r.eta_mean) << ',' << format_number(r.eta_std) << ',' << format_number(r.v_mean) << ','
       << format_number(r.e_mean) << ',' << format_number(r.feasible_fraction) << ',' << format_number(r.iters_mean)
       << '\n';
  }
  return os.str();
}

std::string trials_csv(const std::string& sweep_param, const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os << kTrialsHeader << '\n';
  for (const auto& r : records) {
    os << sweep_param << ',' << format_number(r.value) << ',' << to_string(r.scheme) << ',' << r.trial << ','
       << (r.solved ? 1 : 0) << ',' << (r.feasible ? 1 : 0) << ',' << format_number(r.eta) << ','
       << format_number(r.v_total) << ',' << format_number(r.e_total) << ',' << r.iterations << '\n';
  }
  return os.str();
}

std::string trace_csv(const DinkelbachTrace& trace) {
  std::ostringstream os;
  os << kTraceHeader << '\n';
  for (const auto& e : trace.entries)
    os << e.t << ',' << format_number(e.eta) << ',' << format_number(e.f) << ',' << format_number(e.v_total) << ','
       << format_number(e.e_total) << '\n';
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace semcom
