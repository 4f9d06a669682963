#pragma once

#include <cstdint>

#include "semcom/model.hpp"

namespace semcom {

struct Scenario;

struct BaselineResult {
  PowerAllocation powers;
  ReusePattern pattern;
  Metrics metrics;
};

/// Every user at its power cap; each DUE reuses a uniformly random distinct
/// CUE. Requires N <= M.
BaselineResult benchmark_max_random(const Scenario& scenario, std::uint64_t seed);

/// Powers uniform on [0, cap]; DUEs in index order each claim the farthest
/// CUE (transmitter to transmitter) not yet claimed. Requires N <= M.
BaselineResult benchmark_random_distance(const Scenario& scenario, std::uint64_t seed);

}  // namespace semcom
