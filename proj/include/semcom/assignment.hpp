#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "semcom/model.hpp"
#include "semcom/pair_power.hpp"
#include "semcom/solo_power.hpp"

namespace semcom {

/// Square payoff matrix with an explicit validity mask (row-major).
struct OmegaMatrix {
  std::size_t size = 0;
  std::vector<double> values;
  std::vector<char> valid;

  OmegaMatrix() = default;
  explicit OmegaMatrix(std::size_t n) : size(n), values(n * n, 0.0), valid(n * n, 1) {}
  double value(std::size_t row, std::size_t col) const { return values[row * size + col]; }
  bool is_valid(std::size_t row, std::size_t col) const { return valid[row * size + col] != 0; }
  void set(std::size_t row, std::size_t col, double v) { values[row * size + col] = v; }
  void mask(std::size_t row, std::size_t col) { valid[row * size + col] = 0; }
};

/// M x M matrix: column j < N holds the pair optimum of (CUE i, DUE j), each
/// remaining column repeats the solo optimum of CUE i. Missing solutions are
/// masked. `pairs` is row-major M x N.
OmegaMatrix build_omega(const std::vector<std::optional<PairSolution>>& pairs,
                        const std::vector<std::optional<SoloSolution>>& solos, std::size_t num_dues);

/// Row -> column permutation maximizing the sum of the selected entries over
/// valid cells; among optimal permutations the lexicographically smallest is
/// returned. Throws NoFeasibleMatching if every permutation hits a mask.
std::vector<int> hungarian_max(const OmegaMatrix& matrix);

/// DUE j reuses the CUE matched to column j; CUEs matched to the expanded
/// columns transmit alone.
ReusePattern recover_pattern(const std::vector<int>& perm, std::size_t num_dues);

}  // namespace semcom
