#pragma once

#include <cstddef>
#include <optional>

#include "semcom/staircase.hpp"

namespace semcom {

struct Scenario;

/// Optimal power of a CUE whose subchannel is not reused.
struct SoloSolution {
  double p_c = 0.0;
  double lambda_check = 0.0;
};

/// Everything about a lone CUE that does not depend on the efficiency price.
struct SoloProblem {
  std::size_t cue = 0;
  AffineLink link;
  double theta = 0.0;
  double enc_power_w = 0.0;
  double xi = 1.0;
  double pmax = 0.0;
  std::int64_t min_triplets = 0;
  /// Smallest power meeting the semantic-value floor; above pmax when the
  /// CUE cannot meet it at all.
  double p_lo = 0.0;

  static SoloProblem build(const Scenario& scenario, std::size_t cue);
  bool feasible() const { return p_lo <= pmax; }
  /// (theta - eta P_enc) floor(r / L) - eta xi p.
  double lambda(double p, double eta) const;
};

/// nullopt when the semantic-value floor is out of reach at full power.
std::optional<SoloSolution> solve_solo(const SoloProblem& problem, double eta,
                                       SearchMode mode = SearchMode::kConcavePeak);
std::optional<SoloSolution> solve_solo(const Scenario& scenario, std::size_t cue, double eta,
                                       SearchMode mode = SearchMode::kConcavePeak);

}  // namespace semcom
