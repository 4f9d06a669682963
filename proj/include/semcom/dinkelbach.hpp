#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "semcom/model.hpp"
#include "semcom/pair_power.hpp"

namespace semcom {

struct Scenario;

struct SolverOptions {
  int max_iters = 20;
  double epsilon = 0.01;
  double eta_init = 0.0;
  PairOptions pair;
  SearchMode solo_mode = SearchMode::kConcavePeak;
  /// Workers for the per-iteration subproblems; 0 picks the hardware count.
  unsigned threads = 1;
};

/// Throws ConfigError unless max_iters >= 1 and epsilon > 0.
void check_options(const SolverOptions& options);

struct TraceEntry {
  int t = 0;
  double eta = 0.0;
  double f = 0.0;
  double v_total = 0.0;
  double e_total = 0.0;
};

enum class Termination {
  kConverged,
  kMaxIters,
  /// The inner solvers returned an allocation worse than the previous one
  /// (F < 0); the previous allocation is kept.
  kInnerRegression,
  kInfeasible,
};

const char* to_string(Termination t);

struct DinkelbachTrace {
  std::vector<TraceEntry> entries;
  Termination reason = Termination::kMaxIters;
  /// Iterations where F or the efficiency sequence moved the wrong way.
  int monotonicity_violations = 0;
};

struct SolveResult {
  bool feasible = false;
  std::string infeasible_reason;
  PowerAllocation powers;
  ReusePattern pattern;
  Metrics metrics;
  DinkelbachTrace trace;
  /// Iteration (1-based) whose allocation is returned.
  int selected_iteration = 0;
};

/// V_total - eta * E_total of an allocation.
double subtractive_value(const Scenario& scenario, const PowerAllocation& powers, const ReusePattern& pattern,
                         double eta);

/// Joint power allocation and spectrum reuse maximizing V_total / E_total.
SolveResult solve(const Scenario& scenario, const SolverOptions& options = {});

}  // namespace semcom
