#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace semcom {

/// Relative lift applied to every SINR threshold 2^{nL/W} - 1 so that points
/// built on a threshold evaluate to at least n triplets after rounding.
inline constexpr double kThresholdLift = 1e-10;

/// Relative SINR step used to evaluate the supremum just left of a
/// breakpoint. Taken in SINR rather than power so that it clears the
/// threshold lift even where the rate is nearly flat in power.
inline constexpr double kStepNudge = 1e-9;

/// SINR needed for exactly `triplets` triplets per second, lifted by
/// kThresholdLift.
double sinr_threshold(std::int64_t triplets, double bits_per_triplet, double bandwidth_hz);

/// A link whose own transmit power x also drives its interference affinely:
///   r(x) = W log2(1 + gain * x / (base + slope * x)).
/// Covers a free link along a contour (slope > 0) and an interference-free
/// link (slope = 0).
struct AffineLink {
  double gain = 0.0;
  double base = 0.0;
  double slope = 0.0;
  double bandwidth_hz = 0.0;
  double bits_per_triplet = 0.0;

  double rate(double x) const;
  std::int64_t triplets(double x) const;
  /// Smallest power reaching `m` triplets (lifted), or nullopt when the rate
  /// saturates below mL.
  std::optional<double> breakpoint(std::int64_t m) const;
  /// A power just below the one needed for `m` triplets, still carrying
  /// m - 1; nullopt when saturated.
  std::optional<double> below_breakpoint(std::int64_t m) const;
  /// Power reaching the given SINR, or nullopt if it is out of reach.
  std::optional<double> power_for_sinr(double sinr) const;
};

/// Maximize  step_weight * floor(r(x) / L) + linear_weight * x  over [lo, hi].
struct StaircaseObjective {
  AffineLink link;
  double step_weight = 0.0;
  double linear_weight = 0.0;
  double lo = 0.0;
  double hi = 0.0;

  double value(double x) const;
};

enum class SearchMode {
  /// Breakpoints around the peak of the concave step sequence only.
  kConcavePeak,
  /// Every breakpoint of the staircase (and its left-limit nudge).
  kExhaustive,
};

/// Upper bound on enumerated steps in exhaustive mode; wider domains fall
/// back to the concave-peak candidates.
inline constexpr std::int64_t kMaxEnumeratedSteps = 10'000'000;

/// Candidate powers containing the maximizer of the objective: both domain
/// endpoints plus step left-ends (and, where the objective rises within a
/// step, the nudged right limits).
std::vector<double> staircase_candidates(const StaircaseObjective& objective, SearchMode mode);

/// Real-valued triplet index maximizing the continuous relaxation
/// step_weight * m + linear_weight * x(m); requires step_weight > 0 and
/// linear_weight < 0.
double relaxed_peak(const StaircaseObjective& objective);

}  // namespace semcom
