#include "semcom/dinkelbach.hpp"

#include <cmath>
#include <optional>

#include "semcom/assignment.hpp"
#include "semcom/errors.hpp"
#include "semcom/parallel.hpp"
#include "semcom/scenario.hpp"
#include "semcom/solo_power.hpp"

namespace semcom {
namespace {

struct Iterate {
  PowerAllocation powers;
  ReusePattern pattern;
  Metrics metrics;
  int t = 0;
};

}  // namespace

void check_options(const SolverOptions& o) {
  if (o.max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (!(o.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (o.pair.rounds < 1) throw ConfigError("pair rounds must be at least 1");
  if (o.pair.max_coincide_iters < 1) throw ConfigError("coincide iteration cap must be at least 1");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kMaxIters: return "max_iters";
    case Termination::kInnerRegression: return "inner_regression";
    case Termination::kInfeasible: return "infeasible";
  }
  return "unknown";
}

double subtractive_value(const Scenario& scenario, const PowerAllocation& powers, const ReusePattern& pattern,
                         double eta) {
  const Metrics m = evaluate(scenario, powers, pattern);
  return m.v_total - eta * m.e_total;
}

SolveResult solve(const Scenario& scenario, const SolverOptions& options) {
  check_options(options);
  const std::size_t m = scenario.num_cues();
  const std::size_t n = scenario.num_dues();
  const unsigned threads = options.threads == 0 ? default_threads() : options.threads;

  // The feasible regions do not depend on the price, so they are built once.
  std::vector<PairProblem> pairs(m * n);
  std::vector<SoloProblem> solos(m);
  parallel_for(m * n + m, threads, [&](std::size_t k) {
    if (k < m * n)
      pairs[k] = PairProblem::build(scenario, k / n, k % n);
    else
      solos[k - m * n] = SoloProblem::build(scenario, k - m * n);
  });

  SolveResult result;
  std::vector<std::optional<PairSolution>> pair_sol(m * n);
  std::vector<std::optional<SoloSolution>> solo_sol(m);
  std::optional<Iterate> previous;
  std::optional<Iterate> best;
  double eta = options.eta_init;

  for (int t = 1; t <= options.max_iters; ++t) {
    parallel_for(m * n + m, threads, [&](std::size_t k) {
      if (k < m * n)
        pair_sol[k] = solve_pair(pairs[k], eta, options.pair);
      else
        solo_sol[k - m * n] = solve_solo(solos[k - m * n], eta, options.solo_mode);
    });

    std::vector<int> perm;
    try {
      perm = hungarian_max(build_omega(pair_sol, solo_sol, n));
    } catch (const NoFeasibleMatching& e) {
      result.trace.reason = Termination::kInfeasible;
      result.infeasible_reason = e.what();
      return result;
    }

    Iterate cur;
    cur.t = t;
    cur.pattern = recover_pattern(perm, n);
    cur.powers.p_cue.assign(m, 0.0);
    cur.powers.p_due.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const auto col = static_cast<std::size_t>(perm[i]);
      if (col < n) {
        const PowerPoint p = pair_sol[i * n + col]->power;
        cur.powers.p_cue[i] = p.p_c;
        cur.powers.p_due[col] = p.p_d;
      } else {
        cur.powers.p_cue[i] = solo_sol[i]->p_c;
      }
    }
    cur.metrics = evaluate(scenario, cur.powers, cur.pattern);
    const double f = cur.metrics.v_total - eta * cur.metrics.e_total;
    result.trace.entries.push_back({t, eta, f, cur.metrics.v_total, cur.metrics.e_total});

    if (f < options.epsilon) {
      const double noise = 1e-9 * std::max(cur.metrics.v_total, eta * cur.metrics.e_total);
      if (f < -noise && previous) {
        // The previous allocation scores exactly zero at this price, so it
        // beats what the heuristic inner solvers found.
        ++result.trace.monotonicity_violations;
        result.trace.reason = Termination::kInnerRegression;
        best = previous;
      } else {
        result.trace.reason = Termination::kConverged;
        best = cur;
      }
      break;
    }
    if (!best || cur.metrics.eta > best->metrics.eta) best = cur;
    previous = std::move(cur);
    eta = previous->metrics.eta;
    result.trace.reason = Termination::kMaxIters;
  }

  result.feasible = true;
  result.powers = std::move(best->powers);
  result.pattern = std::move(best->pattern);
  result.metrics = std::move(best->metrics);
  result.selected_iteration = best->t;
  return result;
}

}  // namespace semcom
