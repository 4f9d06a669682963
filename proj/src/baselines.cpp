#include "semcom/baselines.hpp"

#include <numeric>
#include <utility>

#include "semcom/errors.hpp"
#include "semcom/rng.hpp"
#include "semcom/scenario.hpp"

namespace semcom {
namespace {

void require_fit(const Scenario& s) {
  if (s.num_dues() > s.num_cues()) throw ConfigError("baselines need at least as many CUEs as DUEs");
}

}  // namespace

BaselineResult benchmark_max_random(const Scenario& s, std::uint64_t seed) {
  require_fit(s);
  const std::size_t m = s.num_cues();
  const std::size_t n = s.num_dues();
  BaselineResult r;
  r.powers.p_cue.assign(m, s.params.pmax_cue_w);
  r.powers.p_due.assign(n, s.params.pmax_due_w);

  // Partial Fisher-Yates: the first N slots form a uniform random injection.
  std::vector<int> cues(m);
  std::iota(cues.begin(), cues.end(), 0);
  Rng rng(seed);
  for (std::size_t j = 0; j < n; ++j) std::swap(cues[j], cues[j + rng.below(m - j)]);
  r.pattern.cue_of_due.assign(cues.begin(), cues.begin() + static_cast<std::ptrdiff_t>(n));
  r.metrics = evaluate(s, r.powers, r.pattern);
  return r;
}

BaselineResult benchmark_random_distance(const Scenario& s, std::uint64_t seed) {
  require_fit(s);
  const std::size_t m = s.num_cues();
  const std::size_t n = s.num_dues();
  BaselineResult r;
  Rng rng(seed);
  r.powers.p_cue.resize(m);
  r.powers.p_due.resize(n);
  for (auto& p : r.powers.p_cue) p = rng.uniform(0.0, s.params.pmax_cue_w);
  for (auto& p : r.powers.p_due) p = rng.uniform(0.0, s.params.pmax_due_w);

  std::vector<char> claimed(m, 0);
  r.pattern.cue_of_due.assign(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    int far = -1;
    double far_d = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (claimed[i]) continue;
      const double d = distance(s.cue_pos[i], s.due_tx_pos[j]);
      if (d > far_d) {
        far_d = d;
        far = static_cast<int>(i);
      }
    }
    claimed[static_cast<std::size_t>(far)] = 1;
    r.pattern.cue_of_due[j] = far;
  }
  r.metrics = evaluate(s, r.powers, r.pattern);
  return r;
}

}  // namespace semcom
