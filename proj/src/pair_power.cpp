#include "semcom/pair_power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "semcom/model.hpp"
#include "semcom/rng.hpp"
#include "semcom/scenario.hpp"

namespace semcom {
namespace {

constexpr double kClipTol = 1e-9;

enum PlaneIndex { kCueMin = 0, kCueMax, kDueMin, kDueMax, kCueRate, kDueRate };

// Feasible first, then strictly better objective, or equal with lower total
// power, then lower CUE power.
bool better(const LinePoint& a, const LinePoint& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.lambda != b.lambda) return a.lambda > b.lambda;
  const double sa = a.point.p_c + a.point.p_d;
  const double sb = b.point.p_c + b.point.p_d;
  if (sa != sb) return sa < sb;
  return a.point.p_c < b.point.p_c;
}

RegionShape classify(const PairProblem& p) {
  const PowerPoint corner{p.pmax_cue, p.pmax_due};
  if (p.feasible(corner)) return RegionShape::kFullPowerCorner;
  const HalfPlane& cue = p.planes[kCueRate];
  const HalfPlane& due = p.planes[kDueRate];
  // CUE-rate boundary at the top edge: p_c = c + k p_d with a = 1.
  const PowerPoint top{cue.c - cue.b * p.pmax_due, p.pmax_due};
  const PowerPoint right{p.pmax_cue, due.c - due.a * p.pmax_cue};
  const bool top_ok = top.p_c >= 0.0 && top.p_c <= p.pmax_cue && due.slack(top) >= 0.0;
  const bool right_ok = right.p_d >= 0.0 && right.p_d <= p.pmax_due && cue.slack(right) >= 0.0;
  if (top_ok && !right_ok) return RegionShape::kCueBoundTop;
  if (right_ok && !top_ok) return RegionShape::kDueBoundRight;
  return RegionShape::kOther;
}

}  // namespace

PairProblem PairProblem::build(const Scenario& s, std::size_t cue, std::size_t due) {
  const SystemParams& sp = s.params;
  PairProblem p;
  p.cue = cue;
  p.due = due;
  p.g_cue_bs = s.cue_gain_bs[cue];
  p.g_due_bs = s.due_gain_bs[due];
  p.g_due = s.due_gain_internal[due];
  p.g_cross = s.cross(cue, due);
  p.theta_cue = s.theta_cue[cue];
  p.theta_due = s.theta_due[due];
  p.noise_w = sp.noise_w;
  p.bandwidth_hz = sp.subchannel_bandwidth_hz();
  p.bits_per_triplet = sp.bits_per_triplet;
  p.enc_power_w = sp.enc_power_w;
  p.xi = sp.amplifier_inefficiency;
  p.pmax_cue = sp.pmax_cue_w;
  p.pmax_due = sp.pmax_due_w;
  p.min_cue_triplets = min_triplets(sp.vmin_cue, p.theta_cue);
  p.min_due_triplets = min_triplets(sp.vmin_due, p.theta_due);

  const double gamma_c = sinr_threshold(p.min_cue_triplets, p.bits_per_triplet, p.bandwidth_hz);
  const double gamma_d = sinr_threshold(p.min_due_triplets, p.bits_per_triplet, p.bandwidth_hz);
  p.planes[kCueMin] = {1.0, 0.0, 0.0};
  p.planes[kCueMax] = {-1.0, 0.0, -p.pmax_cue};
  p.planes[kDueMin] = {0.0, 1.0, 0.0};
  p.planes[kDueMax] = {0.0, -1.0, -p.pmax_due};
  // p_c G_iB >= gamma_c (noise + p_d G_jB), normalized by G_iB.
  p.planes[kCueRate] = {1.0, -gamma_c * p.g_due_bs / p.g_cue_bs, gamma_c * p.noise_w / p.g_cue_bs};
  // p_d G_j >= gamma_d (noise + p_c G_ij), normalized by G_j.
  p.planes[kDueRate] = {-gamma_d * p.g_cross / p.g_due, 1.0, gamma_d * p.noise_w / p.g_due};

  std::vector<PowerPoint> poly{{0.0, 0.0}, {p.pmax_cue, 0.0}, {p.pmax_cue, p.pmax_due}, {0.0, p.pmax_due}};
  poly = clip_polygon(poly, p.planes[kCueRate]);
  poly = clip_polygon(poly, p.planes[kDueRate]);
  for (auto& v : poly) v = p.clamp(v);
  p.region.vertices = std::move(poly);
  if (!p.region.empty()) p.region.shape = classify(p);
  return p;
}

double PairProblem::rate_cue(PowerPoint x) const {
  return shannon_rate(x.p_c * g_cue_bs, x.p_d * g_due_bs, bandwidth_hz, noise_w);
}

double PairProblem::rate_due(PowerPoint x) const {
  return shannon_rate(x.p_d * g_due, x.p_c * g_cross, bandwidth_hz, noise_w);
}

bool PairProblem::feasible(PowerPoint x) const {
  if (x.p_c < 0.0 || x.p_c > pmax_cue || x.p_d < 0.0 || x.p_d > pmax_due) return false;
  return triplet_count(rate_cue(x), bits_per_triplet) >= min_cue_triplets &&
         triplet_count(rate_due(x), bits_per_triplet) >= min_due_triplets;
}

PowerPoint PairProblem::clamp(PowerPoint x) const {
  return {std::clamp(x.p_c, 0.0, pmax_cue), std::clamp(x.p_d, 0.0, pmax_due)};
}

FeasibleRegion feasible_region(const Scenario& scenario, std::size_t cue, std::size_t due) {
  return PairProblem::build(scenario, cue, due).region;
}

PairWorking::PairWorking(const PairProblem& p, double eta_)
    : problem(&p), eta(eta_), sigma_cue(p.theta_cue - eta_ * p.enc_power_w), sigma_due(p.theta_due - eta_ * p.enc_power_w) {}

PairWorking::Score PairWorking::score(PowerPoint x) const {
  const PairProblem& p = *problem;
  const std::int64_t n_c = triplet_count(p.rate_cue(x), p.bits_per_triplet);
  const std::int64_t n_d = triplet_count(p.rate_due(x), p.bits_per_triplet);
  const double value = sigma_cue * static_cast<double>(n_c) + sigma_due * static_cast<double>(n_d) -
                       eta * p.xi * (x.p_c + x.p_d);
  const bool ok = n_c >= p.min_cue_triplets && n_d >= p.min_due_triplets && x.p_c >= 0.0 && x.p_c <= p.pmax_cue &&
                  x.p_d >= 0.0 && x.p_d <= p.pmax_due;
  return {value, ok};
}

double PairWorking::lambda(PowerPoint x) const { return score(x).lambda; }

double lambda_pair(double p_c, double p_d, const Scenario& scenario, std::size_t cue, std::size_t due, double eta) {
  const PairProblem problem = PairProblem::build(scenario, cue, due);
  return PairWorking(problem, eta).lambda({p_c, p_d});
}

PowerPoint ContourSegment::at(double free_power) const {
  const double fixed_power = slope * free_power + intercept;
  return fixed == FixedLink::kCue ? PowerPoint{fixed_power, free_power} : PowerPoint{free_power, fixed_power};
}

std::optional<ContourSegment> contour_through(PowerPoint point, FixedLink fixed, const PairWorking& w) {
  const PairProblem& p = *w.problem;
  ContourSegment seg;
  seg.fixed = fixed;
  double free_max;
  PowerPoint origin;
  PowerPoint dir;
  if (fixed == FixedLink::kCue) {
    seg.triplets = triplet_count(p.rate_cue(point), p.bits_per_triplet);
    const double gamma = sinr_threshold(seg.triplets, p.bits_per_triplet, p.bandwidth_hz);
    seg.slope = p.g_due_bs * gamma / p.g_cue_bs;
    seg.intercept = p.noise_w * gamma / p.g_cue_bs;
    free_max = p.pmax_due;
    origin = {seg.intercept, 0.0};
    dir = {seg.slope, 1.0};
  } else {
    seg.triplets = triplet_count(p.rate_due(point), p.bits_per_triplet);
    const double gamma = sinr_threshold(seg.triplets, p.bits_per_triplet, p.bandwidth_hz);
    seg.slope = p.g_cross * gamma / p.g_due;
    seg.intercept = p.noise_w * gamma / p.g_due;
    free_max = p.pmax_cue;
    origin = {0.0, seg.intercept};
    dir = {1.0, seg.slope};
  }
  const auto range = clip_line(origin, dir, p.planes, {0.0, free_max}, kClipTol);
  if (!range) return std::nullopt;
  seg.free_lo = range->lo;
  seg.free_hi = range->hi;
  return seg;
}

LinePoint line_search(const ContourSegment& seg, const PairWorking& w, SearchMode mode) {
  const PairProblem& p = *w.problem;
  StaircaseObjective obj;
  obj.lo = seg.free_lo;
  obj.hi = seg.free_hi;
  obj.linear_weight = -w.eta * p.xi * (seg.slope + 1.0);
  obj.link.bandwidth_hz = p.bandwidth_hz;
  obj.link.bits_per_triplet = p.bits_per_triplet;
  if (seg.fixed == FixedLink::kCue) {
    obj.link.gain = p.g_due;
    obj.link.base = p.noise_w + p.g_cross * seg.intercept;
    obj.link.slope = p.g_cross * seg.slope;
    obj.step_weight = w.sigma_due;
  } else {
    obj.link.gain = p.g_cue_bs;
    obj.link.base = p.noise_w + p.g_due_bs * seg.intercept;
    obj.link.slope = p.g_due_bs * seg.slope;
    obj.step_weight = w.sigma_cue;
  }

  // Clipping against the free link's rate floor is subject to rounding; its
  // own lifted breakpoint is the exact start of the admissible range.
  const std::int64_t free_min = seg.fixed == FixedLink::kCue ? p.min_due_triplets : p.min_cue_triplets;
  if (const auto start = obj.link.breakpoint(free_min); start && *start > obj.lo) obj.lo = std::min(*start, obj.hi);

  LinePoint best;
  bool have = false;
  for (double x : staircase_candidates(obj, mode)) {
    const PowerPoint pt = p.clamp(seg.at(x));
    const auto s = w.score(pt);
    const LinePoint cand{pt, s.lambda, s.feasible};
    if (!have || better(cand, best)) {
      best = cand;
      have = true;
    }
  }
  return best;
}

CoincideResult coincide_search(PowerPoint start, const PairWorking& w, const PairOptions& opt) {
  const PairProblem& p = *w.problem;
  CoincideResult out;
  const auto s0 = w.score(start);
  out.best = {start, s0.lambda, s0.feasible};
  out.last_cue_fixed = out.last_due_fixed = out.best;
  PowerPoint current = start;
  for (int it = 0; it < opt.max_coincide_iters; ++it) {
    out.iterations = it + 1;
    const auto cue_seg = contour_through(current, FixedLink::kCue, w);
    if (!cue_seg) break;
    const LinePoint left = line_search(*cue_seg, w, opt.mode);
    out.trace.push_back(left.lambda);
    if (better(left, out.best)) out.best = left;
    out.last_cue_fixed = left;

    const auto due_seg = contour_through(left.point, FixedLink::kDue, w);
    if (!due_seg) break;
    const LinePoint right = line_search(*due_seg, w, opt.mode);
    out.trace.push_back(right.lambda);
    if (better(right, out.best)) out.best = right;
    out.last_due_fixed = right;

    if (std::abs(left.point.p_c - right.point.p_c) <= opt.coincide_tol * p.pmax_cue &&
        std::abs(left.point.p_d - right.point.p_d) <= opt.coincide_tol * p.pmax_due) {
      out.converged = true;
      break;
    }
    current = right.point;
  }
  return out;
}

std::optional<PairSolution> solve_pair(const PairProblem& problem, double eta, const PairOptions& opt) {
  if (problem.region.empty()) return std::nullopt;
  const PairWorking w(problem, eta);
  const auto& verts = problem.region.vertices;

  Rng rng(mix_seed({opt.seed, problem.cue, problem.due}));
  auto interior = [&] {
    // Random convex combination of the vertices stays inside the region.
    std::vector<double> weights(verts.size());
    double total = 0.0;
    for (auto& x : weights) total += (x = rng.uniform() + 1e-3);
    PowerPoint pt{};
    for (std::size_t k = 0; k < verts.size(); ++k) {
      pt.p_c += weights[k] / total * verts[k].p_c;
      pt.p_d += weights[k] / total * verts[k].p_d;
    }
    return problem.clamp(pt);
  };

  PairSolution sol;
  LinePoint best;
  bool have = false;
  bool all_converged = true;
  const int rounds = std::max(opt.rounds, 1);
  for (int round = 0; round < rounds; ++round) {
    const PowerPoint start =
        static_cast<std::size_t>(round) < verts.size() ? verts[static_cast<std::size_t>(round)] : interior();
    const CoincideResult r = coincide_search(start, w, opt);
    all_converged = all_converged && r.converged;
    if (!r.best.feasible) continue;
    if (!have || better(r.best, best)) {
      best = r.best;
      have = true;
    }
  }
  // Only a sliver of region so thin that rounding defeats every start.
  if (!have) return std::nullopt;
  sol.power = best.point;
  sol.lambda = best.lambda;
  sol.rounds_used = rounds;
  sol.converged = all_converged;
  return sol;
}

std::optional<PairSolution> solve_pair(const Scenario& scenario, std::size_t cue, std::size_t due, double eta,
                                       const PairOptions& options) {
  return solve_pair(PairProblem::build(scenario, cue, due), eta, options);
}

}  // namespace semcom
