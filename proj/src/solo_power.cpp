#include "semcom/solo_power.hpp"

#include <limits>

#include "semcom/model.hpp"
#include "semcom/scenario.hpp"

namespace semcom {

SoloProblem SoloProblem::build(const Scenario& s, std::size_t cue) {
  const SystemParams& sp = s.params;
  SoloProblem p;
  p.cue = cue;
  p.link = {s.cue_gain_bs[cue], sp.noise_w, 0.0, sp.subchannel_bandwidth_hz(), sp.bits_per_triplet};
  p.theta = s.theta_cue[cue];
  p.enc_power_w = sp.enc_power_w;
  p.xi = sp.amplifier_inefficiency;
  p.pmax = sp.pmax_cue_w;
  p.min_triplets = semcom::min_triplets(sp.vmin_cue, p.theta);
  p.p_lo = p.link.breakpoint(p.min_triplets).value_or(std::numeric_limits<double>::infinity());
  return p;
}

double SoloProblem::lambda(double p, double eta) const {
  return (theta - eta * enc_power_w) * static_cast<double>(link.triplets(p)) - eta * xi * p;
}

std::optional<SoloSolution> solve_solo(const SoloProblem& problem, double eta, SearchMode mode) {
  if (!problem.feasible()) return std::nullopt;
  StaircaseObjective obj{problem.link, problem.theta - eta * problem.enc_power_w, -eta * problem.xi, problem.p_lo,
                         problem.pmax};
  SoloSolution best{problem.p_lo, problem.lambda(problem.p_lo, eta)};
  for (double x : staircase_candidates(obj, mode)) {
    const double v = problem.lambda(x, eta);
    // Ties go to the lower power.
    if (v > best.lambda_check || (v == best.lambda_check && x < best.p_c)) best = {x, v};
  }
  return best;
}

std::optional<SoloSolution> solve_solo(const Scenario& scenario, std::size_t cue, double eta, SearchMode mode) {
  return solve_solo(SoloProblem::build(scenario, cue), eta, mode);
}

}  // namespace semcom
