#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "semcom/rng.hpp"
#include "semcom/scenario.hpp"
#include "semcom/solo_power.hpp"

using namespace semcom;

namespace {

Scenario make_scenario(std::uint64_t seed, double vmin = 50.0) {
  ScenarioConfig cfg{default_params(), seed, 1};
  cfg.params.num_cues = 35;
  cfg.params.num_dues = 30;
  cfg.params.vmin_cue = cfg.params.vmin_due = vmin;
  return generate(cfg, 0);
}

}  // namespace

TEST_CASE("zero floor and zero price reach the top step") {
  const Scenario s = make_scenario(1, 0.0);
  for (std::size_t i = 0; i < 35; ++i) {
    const auto sol = solve_solo(s, i, 0.0);
    REQUIRE(sol);
    const SoloProblem p = SoloProblem::build(s, i);
    // Equal value to transmitting at the cap; the cheapest such power wins the tie.
    CHECK(sol->lambda_check == p.lambda(p.pmax, 0.0));
    CHECK(p.link.triplets(sol->p_c) == p.link.triplets(p.pmax));
    CHECK(sol->p_c <= p.pmax);
  }
}

TEST_CASE("small price pushes the power to the cap region") {
  const Scenario s = make_scenario(2, 0.0);
  for (std::size_t i = 0; i < 35; ++i) {
    const SoloProblem p = SoloProblem::build(s, i);
    const auto sol = solve_solo(p, 1e-6);
    REQUIRE(sol);
    CHECK(p.link.triplets(sol->p_c) >= p.link.triplets(p.pmax) - 1);
  }
}

TEST_CASE("unreachable floor is infeasible") {
  const Scenario s = make_scenario(3, 1e9);
  CHECK_FALSE(solve_solo(s, 0, 0.0));
  CHECK_FALSE(SoloProblem::build(s, 0).feasible());
}

TEST_CASE("solution lies in the derived domain and its objective recomputes") {
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Scenario s = make_scenario(seed);
    for (std::size_t i = 0; i < 35; i += 5) {
      const SoloProblem p = SoloProblem::build(s, i);
      const double eta = rng.uniform(0.0, 1200.0);
      const auto sol = solve_solo(p, eta);
      REQUIRE(sol);
      const double w = s.params.subchannel_bandwidth_hz();
      const auto nmin = static_cast<double>(min_triplets(50.0, s.theta_cue[i]));
      const double lower = s.params.noise_w * std::expm1(50.0 / w * nmin * std::log(2.0)) / s.cue_gain_bs[i];
      CHECK(sol->p_c >= lower * (1 - 1e-9));
      CHECK(sol->p_c <= p.pmax);
      const double rate = w * std::log2(1.0 + sol->p_c * s.cue_gain_bs[i] / s.params.noise_w);
      const double expect = (s.theta_cue[i] - eta * s.params.enc_power_w) * std::floor(rate / 50.0) -
                            eta * s.params.amplifier_inefficiency * sol->p_c;
      CHECK(sol->lambda_check == doctest::Approx(expect).epsilon(1e-9));
      CHECK(s.theta_cue[i] * std::floor(rate / 50.0) >= 50.0);
    }
  }
}

TEST_CASE("concave-peak and exhaustive modes agree") {
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Scenario s = make_scenario(seed);
    for (std::size_t i = 0; i < 35; i += 3) {
      const SoloProblem p = SoloProblem::build(s, i);
      const double eta = rng.uniform(0.0, 1500.0);
      CHECK(solve_solo(p, eta)->lambda_check ==
            doctest::Approx(solve_solo(p, eta, SearchMode::kExhaustive)->lambda_check).epsilon(1e-12));
    }
  }
}

TEST_CASE("solo solver beats a fine grid") {
  Rng rng(6);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Scenario s = make_scenario(50 + seed);
    const SoloProblem p = SoloProblem::build(s, rng.below(35));
    const double eta = rng.uniform(0.0, 1200.0);
    const auto sol = solve_solo(p, eta);
    REQUIRE(sol);
    const double grid = oracle::solo_grid(p, eta, 20000).lambda;
    CHECK(sol->lambda_check >= grid - 1e-9 * std::abs(grid));
  }
}
