#include <doctest.h>

#include "semcom/baselines.hpp"
#include "semcom/errors.hpp"
#include "semcom/scenario.hpp"

using namespace semcom;

namespace {

Scenario make_scenario(std::size_t m, std::size_t n, std::uint64_t seed) {
  ScenarioConfig cfg{default_params(), seed, 1};
  cfg.params.num_cues = m;
  cfg.params.num_dues = n;
  return generate(cfg, 0);
}

}  // namespace

TEST_CASE("maximum-power scheme uses every cap") {
  const Scenario s = make_scenario(20, 12, 1);
  const BaselineResult r = benchmark_max_random(s, 3);
  for (double p : r.powers.p_cue) CHECK(p == s.params.pmax_cue_w);
  for (double p : r.powers.p_due) CHECK(p == s.params.pmax_due_w);
  CHECK(r.metrics.cue_power_ok);
  CHECK(r.metrics.due_power_ok);
}

TEST_CASE("random reuse is injective and seeded") {
  const Scenario s = make_scenario(20, 12, 2);
  for (std::uint64_t seed = 0; seed < 200; ++seed) CHECK(is_valid_pattern(benchmark_max_random(s, seed).pattern, 20, 12));
  CHECK(benchmark_max_random(s, 7).pattern == benchmark_max_random(s, 7).pattern);
  CHECK_FALSE(benchmark_max_random(s, 7).pattern == benchmark_max_random(s, 8).pattern);
}

TEST_CASE("random reuse covers every CUE over many seeds") {
  const Scenario s = make_scenario(6, 1, 3);
  std::vector<int> hits(6, 0);
  for (std::uint64_t seed = 0; seed < 600; ++seed) ++hits[benchmark_max_random(s, seed).pattern.cue_of_due[0]];
  for (int h : hits) CHECK(h > 60);
}

TEST_CASE("random-power scheme stays within the caps and is seeded") {
  const Scenario s = make_scenario(20, 12, 4);
  const BaselineResult a = benchmark_random_distance(s, 5);
  for (double p : a.powers.p_cue) CHECK((p >= 0.0 && p <= s.params.pmax_cue_w));
  for (double p : a.powers.p_due) CHECK((p >= 0.0 && p <= s.params.pmax_due_w));
  const BaselineResult b = benchmark_random_distance(s, 5);
  CHECK(a.powers == b.powers);
  CHECK(a.pattern == b.pattern);
  CHECK(is_valid_pattern(a.pattern, 20, 12));
}

TEST_CASE("a single DUE takes the farthest CUE") {
  const Scenario s = make_scenario(15, 1, 6);
  std::size_t far = 0;
  for (std::size_t i = 1; i < 15; ++i)
    if (distance(s.cue_pos[i], s.due_tx_pos[0]) > distance(s.cue_pos[far], s.due_tx_pos[0])) far = i;
  CHECK(benchmark_random_distance(s, 1).pattern.cue_of_due[0] == static_cast<int>(far));
}

TEST_CASE("later DUEs skip CUEs already claimed") {
  const Scenario s = make_scenario(5, 5, 7);
  CHECK(is_valid_pattern(benchmark_random_distance(s, 1).pattern, 5, 5));
}

TEST_CASE("metrics match a direct evaluation") {
  const Scenario s = make_scenario(10, 6, 8);
  const BaselineResult r = benchmark_random_distance(s, 2);
  const Metrics m = evaluate(s, r.powers, r.pattern);
  CHECK(m.eta == r.metrics.eta);
  CHECK(m.feasible() == r.metrics.feasible());
}
