#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "semcom/dinkelbach.hpp"
#include "semcom/params.hpp"

namespace semcom {

enum class Scheme { kProposed, kMaxRandom, kRandomDistance };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

/// Parameters a sweep may vary.
inline constexpr std::string_view kSweepParams[] = {"M", "N", "pmax_cue_dbm", "pmax_due_dbm", "K", "vmin", "iterations"};

struct SweepSpec {
  std::string sweep_param = "M";
  std::vector<double> values;
  /// Parameters shared by every sweep point before the swept one is applied.
  SystemParams params = default_params();
  SolverOptions solver;
  std::size_t trials = 20;
  std::uint64_t master_seed = 1;
  std::vector<Scheme> schemes{Scheme::kProposed, Scheme::kMaxRandom, Scheme::kRandomDistance};
};

/// Parameters and solver options at one sweep point; throws ConfigError if
/// they break an invariant.
struct SweepPoint {
  SystemParams params;
  SolverOptions solver;
};
SweepPoint apply_sweep_value(const SweepSpec& spec, double value);

/// Throws ConfigError unless every sweep point is valid.
void check_spec(const SweepSpec& spec);

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// One scheme run on one trial scenario.
struct TrialRecord {
  double value = 0.0;
  Scheme scheme = Scheme::kProposed;
  std::size_t trial = 0;
  /// The scheme produced an allocation (the proposed solver may not).
  bool solved = false;
  /// The allocation meets every constraint.
  bool feasible = false;
  double eta = 0.0;
  double v_total = 0.0;
  double e_total = 0.0;
  int iterations = 0;
};

struct SweepResult {
  std::string sweep_param;
  double value = 0.0;
  Scheme scheme = Scheme::kProposed;
  std::size_t trials = 0;
  double eta_mean = 0.0;
  double eta_std = 0.0;
  double v_mean = 0.0;
  double e_mean = 0.0;
  double feasible_fraction = 0.0;
  double iters_mean = 0.0;
};

struct SweepOutput {
  std::vector<SweepResult> results;
  std::vector<TrialRecord> records;
};

/// Scenario of trial t depends only on (master_seed, t) and the sweep-point
/// parameters, so all schemes at a point see the same networks.
std::uint64_t scheme_seed(std::uint64_t master_seed, double value, Scheme scheme, std::size_t trial);

/// Runs every (value, trial, scheme) on up to `threads` workers; output is
/// independent of the worker count.
SweepOutput run_sweep(const SweepSpec& spec, unsigned threads);

/// Means over the trials where the scheme produced an allocation.
std::vector<SweepResult> aggregate(const SweepSpec& spec, const std::vector<TrialRecord>& records);

inline constexpr std::string_view kResultsHeader =
    "sweep_param,value,scheme,trials,eta_mean,eta_std,v_mean,e_mean,feasible_fraction,iters_mean";
inline constexpr std::string_view kTrialsHeader = "sweep_param,value,scheme,trial,solved,feasible,eta,v_total,e_total,iters";
inline constexpr std::string_view kTraceHeader = "t,eta,F,v_total,e_total";

std::string format_number(double x);
std::string results_csv(const std::vector<SweepResult>& results);
std::string trials_csv(const std::string& sweep_param, const std::vector<TrialRecord>& records);
std::string trace_csv(const DinkelbachTrace& trace);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace semcom
