#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "semcom/geometry.hpp"
#include "semcom/staircase.hpp"

namespace semcom {

struct Scenario;

/// Which of the three textbook region shapes the feasible set of a pair
/// takes: the CUE-rate boundary cuts the top edge (a), both links are
/// satisfied at full power (b), or the DUE-rate boundary cuts the right
/// edge (c).
enum class RegionShape { kCueBoundTop, kFullPowerCorner, kDueBoundRight, kOther };

/// Feasible power set of one CUE-DUE pair: the power box intersected with
/// the two minimum-rate half-planes. Vertices counterclockwise.
struct FeasibleRegion {
  std::vector<PowerPoint> vertices;
  RegionShape shape = RegionShape::kOther;
  bool empty() const { return vertices.empty(); }
};

/// Everything about a pair that does not depend on the efficiency price.
struct PairProblem {
  std::size_t cue = 0;
  std::size_t due = 0;
  double g_cue_bs = 0.0;    // G_{i,B}
  double g_due_bs = 0.0;    // G_{j,B}
  double g_due = 0.0;       // G_j^D
  double g_cross = 0.0;     // G_{i,j}
  double theta_cue = 0.0;
  double theta_due = 0.0;
  double noise_w = 0.0;
  double bandwidth_hz = 0.0;
  double bits_per_triplet = 0.0;
  double enc_power_w = 0.0;
  double xi = 1.0;
  double pmax_cue = 0.0;
  double pmax_due = 0.0;
  std::int64_t min_cue_triplets = 0;
  std::int64_t min_due_triplets = 0;
  // Box (4) followed by the CUE-rate and DUE-rate half-planes.
  std::array<HalfPlane, 6> planes{};
  FeasibleRegion region;

  static PairProblem build(const Scenario& scenario, std::size_t cue, std::size_t due);

  double rate_cue(PowerPoint p) const;
  double rate_due(PowerPoint p) const;
  /// Both rate thresholds met and the point inside the box.
  bool feasible(PowerPoint p) const;
  PowerPoint clamp(PowerPoint p) const;
};

FeasibleRegion feasible_region(const Scenario& scenario, std::size_t cue, std::size_t due);

/// Price-dependent state: sigma = theta - eta * P_enc for each link.
struct PairWorking {
  const PairProblem* problem = nullptr;
  double eta = 0.0;
  double sigma_cue = 0.0;
  double sigma_due = 0.0;

  PairWorking(const PairProblem& p, double eta);

  /// sigma_c floor(r_c / L) + sigma_d floor(r_d / L) - eta xi (p_c + p_d).
  double lambda(PowerPoint p) const;
  /// Objective and exact floor check from a single rate evaluation.
  struct Score {
    double lambda;
    bool feasible;
  };
  Score score(PowerPoint p) const;
};

double lambda_pair(double p_c, double p_d, const Scenario& scenario, std::size_t cue, std::size_t due, double eta);

enum class FixedLink { kCue, kDue };

/// Locus on which the fixed link carries exactly `triplets` triplets:
///   fixed power = slope * free power + intercept,
/// clipped to the feasible region (free-power range [free_lo, free_hi]).
struct ContourSegment {
  FixedLink fixed = FixedLink::kCue;
  double slope = 0.0;
  double intercept = 0.0;
  std::int64_t triplets = 0;
  double free_lo = 0.0;
  double free_hi = 0.0;

  PowerPoint at(double free_power) const;
};

/// Contour of the fixed link through `point` (projected onto the exact-rate
/// line below it). nullopt only if the projection leaves the region, which
/// cannot happen for points of the region.
std::optional<ContourSegment> contour_through(PowerPoint point, FixedLink fixed, const PairWorking& working);

struct LinePoint {
  PowerPoint point;
  double lambda = 0.0;
  bool feasible = false;
};

/// Best point of the pair objective along a contour among those meeting both
/// floors (falling back to the best infeasible candidate if none does); ties
/// go to the lower total power, then the lower CUE power.
LinePoint line_search(const ContourSegment& segment, const PairWorking& working,
                      SearchMode mode = SearchMode::kConcavePeak);

struct PairOptions {
  int rounds = 8;
  int max_coincide_iters = 50;
  double coincide_tol = 1e-9;
  SearchMode mode = SearchMode::kConcavePeak;
  std::uint64_t seed = 0x5eed;
};

struct CoincideResult {
  LinePoint best;
  LinePoint last_cue_fixed;
  LinePoint last_due_fixed;
  bool converged = false;
  int iterations = 0;
  // Objective after each line search, in order.
  std::vector<double> trace;
};

/// Alternating contour searches (CUE fixed, then DUE fixed) until the two
/// optima coincide or the iteration cap is hit. Returns the best feasible
/// point seen (the start if nothing feasible improves on it).
CoincideResult coincide_search(PowerPoint start, const PairWorking& working, const PairOptions& options);

struct PairSolution {
  PowerPoint power;
  double lambda = 0.0;
  int rounds_used = 0;
  bool converged = false;
};

/// Multi-start coincide search from every region vertex and then random
/// interior points; nullopt when the region is empty.
std::optional<PairSolution> solve_pair(const PairProblem& problem, double eta, const PairOptions& options = {});
std::optional<PairSolution> solve_pair(const Scenario& scenario, std::size_t cue, std::size_t due, double eta,
                                       const PairOptions& options = {});

}  // namespace semcom
