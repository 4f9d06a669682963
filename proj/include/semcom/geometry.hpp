#pragma once

#include <optional>
#include <span>
#include <vector>

namespace semcom {

/// A point of the (P_i^C, P_j^D) power plane.
struct PowerPoint {
  double p_c = 0.0;
  double p_d = 0.0;
  bool operator==(const PowerPoint&) const = default;
};

/// Closed half-plane a * p_c + b * p_d >= c.
struct HalfPlane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double slack(PowerPoint p) const { return a * p.p_c + b * p.p_d - c; }
};

/// Sutherland-Hodgman step: the part of a convex polygon (CCW) inside `h`.
std::vector<PowerPoint> clip_polygon(const std::vector<PowerPoint>& polygon, const HalfPlane& h);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Parameter range t in [lo, hi] of origin + t * dir satisfying every
/// half-plane, starting from [t_lo, t_hi]. Empty ranges shorter than
/// `collapse_tol` are collapsed onto their midpoint instead of rejected.
std::optional<Interval> clip_line(PowerPoint origin, PowerPoint dir, std::span<const HalfPlane> planes, Interval range,
                                  double collapse_tol);

}  // namespace semcom
