#include "semcom/geometry.hpp"

#include <algorithm>

namespace semcom {

std::vector<PowerPoint> clip_polygon(const std::vector<PowerPoint>& polygon, const HalfPlane& h) {
  std::vector<PowerPoint> out;
  const std::size_t n = polygon.size();
  if (n == 0) return out;
  out.reserve(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const PowerPoint cur = polygon[k];
    const PowerPoint next = polygon[(k + 1) % n];
    const double s_cur = h.slack(cur);
    const double s_next = h.slack(next);
    if (s_cur >= 0.0) out.push_back(cur);
    if ((s_cur >= 0.0) != (s_next >= 0.0)) {
      const double t = s_cur / (s_cur - s_next);
      out.push_back({cur.p_c + t * (next.p_c - cur.p_c), cur.p_d + t * (next.p_d - cur.p_d)});
    }
  }
  // Drop consecutive duplicates produced when an edge endpoint lies on the line.
  std::vector<PowerPoint> unique;
  for (const auto& p : out)
    if (unique.empty() || !(p == unique.back())) unique.push_back(p);
  while (unique.size() > 1 && unique.front() == unique.back()) unique.pop_back();
  return unique;
}

std::optional<Interval> clip_line(PowerPoint origin, PowerPoint dir, std::span<const HalfPlane> planes, Interval range,
                                  double collapse_tol) {
  double lo = range.lo;
  double hi = range.hi;
  for (const auto& h : planes) {
    const double rate = h.a * dir.p_c + h.b * dir.p_d;
    const double base = h.slack(origin);
    if (rate == 0.0) {
      if (base < 0.0) {
        // Parallel and outside: tolerate rounding-level violations only.
        const double scale = std::max({std::abs(h.c), std::abs(h.a * origin.p_c), std::abs(h.b * origin.p_d)});
        if (-base > collapse_tol * std::max(scale, 1e-300)) return std::nullopt;
      }
      continue;
    }
    const double t = -base / rate;
    if (rate > 0.0)
      lo = std::max(lo, t);
    else
      hi = std::min(hi, t);
  }
  if (lo > hi) {
    const double width = std::max({std::abs(range.lo), std::abs(range.hi), std::abs(lo), std::abs(hi)});
    if (lo - hi > collapse_tol * width) return std::nullopt;
    const double mid = 0.5 * (lo + hi);
    lo = hi = std::clamp(mid, range.lo, range.hi);
  }
  return Interval{lo, hi};
}

}  // namespace semcom
