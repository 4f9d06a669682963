#include "semcom/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace semcom {

double sinr_threshold(std::int64_t triplets, double bits_per_triplet, double bandwidth_hz) {
  if (triplets <= 0) return 0.0;
  const double exponent = static_cast<double>(triplets) * bits_per_triplet / bandwidth_hz * std::numbers::ln2;
  return std::expm1(exponent) * (1.0 + kThresholdLift);
}

double AffineLink::rate(double x) const {
  if (x <= 0.0) return 0.0;
  return bandwidth_hz * std::log1p(gain * x / (base + slope * x)) / std::numbers::ln2;
}

std::int64_t AffineLink::triplets(double x) const {
  return static_cast<std::int64_t>(std::floor(rate(x) / bits_per_triplet));
}

std::optional<double> AffineLink::power_for_sinr(double sinr) const {
  const double den = gain - slope * sinr;
  if (!(den > 0.0) || !std::isfinite(sinr)) return std::nullopt;
  return base * sinr / den;
}

std::optional<double> AffineLink::breakpoint(std::int64_t m) const {
  if (m <= 0) return 0.0;
  return power_for_sinr(sinr_threshold(m, bits_per_triplet, bandwidth_hz));
}

std::optional<double> AffineLink::below_breakpoint(std::int64_t m) const {
  if (m <= 0) return std::nullopt;
  const double exact = std::expm1(static_cast<double>(m) * bits_per_triplet / bandwidth_hz * std::numbers::ln2);
  if (!power_for_sinr(exact)) return std::nullopt;
  return power_for_sinr(exact * (1.0 - kStepNudge));
}

double StaircaseObjective::value(double x) const {
  return step_weight * static_cast<double>(link.triplets(x)) + linear_weight * x;
}

double relaxed_peak(const StaircaseObjective& obj) {
  const AffineLink& l = obj.link;
  // Stationarity of  sigma * m + a * x(m)  with x(gamma) = base*gamma/(G - s*gamma)
  // and gamma(m) = 2^{mL/W} - 1 reduces to  kappa (1 + gamma) = A (G - s*gamma)^2.
  const double a_ratio = obj.step_weight / -obj.linear_weight;
  const double kappa = l.base * l.gain * std::numbers::ln2 * l.bits_per_triplet / l.bandwidth_hz;
  const double lead = a_ratio * l.gain * l.gain;
  if (!(lead > kappa)) return 0.0;
  double gamma;
  if (l.slope == 0.0) {
    gamma = lead / kappa - 1.0;
  } else {
    const double b = 2.0 * a_ratio * l.gain * l.slope + kappa;
    const double disc = b * b - 4.0 * a_ratio * l.slope * l.slope * (lead - kappa);
    gamma = 2.0 * (lead - kappa) / (b + std::sqrt(std::max(disc, 0.0)));
  }
  return l.bandwidth_hz / l.bits_per_triplet * std::log1p(gamma) / std::numbers::ln2;
}

std::vector<double> staircase_candidates(const StaircaseObjective& obj, SearchMode mode) {
  std::vector<double> out{obj.lo};
  if (obj.hi > obj.lo) out.push_back(obj.hi);
  const std::int64_t m_lo = obj.link.triplets(obj.lo);
  const std::int64_t m_hi = obj.link.triplets(obj.hi);
  if (m_hi <= m_lo) return out;

  auto left_end = [&](std::int64_t m) {
    if (m <= m_lo || m > m_hi) return;
    if (auto x = obj.link.breakpoint(m); x && *x >= obj.lo && *x <= obj.hi) out.push_back(*x);
  };
  auto right_limit = [&](std::int64_t m) {
    if (m <= m_lo || m > m_hi) return;
    if (auto x = obj.link.below_breakpoint(m); x && *x >= obj.lo && *x <= obj.hi) out.push_back(*x);
  };

  const double sigma = obj.step_weight;
  const double slope = obj.linear_weight;
  if (mode == SearchMode::kExhaustive && m_hi - m_lo <= kMaxEnumeratedSteps) {
    for (std::int64_t m = m_lo + 1; m <= m_hi; ++m) {
      left_end(m);
      right_limit(m);
    }
    return out;
  }

  if (sigma > 0.0) {
    if (slope >= 0.0) {
      left_end(m_hi);
    } else {
      // Breakpoint powers are convex in the step index, so the step left-end
      // values form a concave sequence; its peak sits next to the relaxed one.
      const double peak = relaxed_peak(obj);
      const auto base = static_cast<std::int64_t>(std::clamp(std::floor(peak), -1.0, static_cast<double>(m_hi) + 1.0));
      for (std::int64_t d = -1; d <= 2; ++d) left_end(std::clamp(base + d, m_lo + 1, m_hi));
    }
  } else if (sigma < 0.0 && slope > 0.0) {
    right_limit(m_lo + 1);
    right_limit(m_hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace semcom
