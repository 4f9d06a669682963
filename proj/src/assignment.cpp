#include "semcom/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "semcom/errors.hpp"

namespace semcom {

OmegaMatrix build_omega(const std::vector<std::optional<PairSolution>>& pairs,
                        const std::vector<std::optional<SoloSolution>>& solos, std::size_t num_dues) {
  const std::size_t m = solos.size();
  OmegaMatrix omega(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < num_dues; ++j) {
      const auto& pair = pairs[i * num_dues + j];
      if (pair)
        omega.set(i, j, pair->lambda);
      else
        omega.mask(i, j);
    }
    for (std::size_t j = num_dues; j < m; ++j) {
      if (solos[i])
        omega.set(i, j, solos[i]->lambda_check);
      else
        omega.mask(i, j);
    }
  }
  return omega;
}

std::vector<int> hungarian_max(const OmegaMatrix& omega) {
  const std::size_t n = omega.size;
  if (n == 0) return {};
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Maximization as minimization of (row max - value); every cost is >= 0.
  std::vector<double> cost(n * n, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row_max = -kInf;
    for (std::size_t j = 0; j < n; ++j)
      if (omega.is_valid(i, j)) row_max = std::max(row_max, omega.value(i, j));
    if (row_max == -kInf) throw NoFeasibleMatching("row " + std::to_string(i) + " has no admissible column");
    for (std::size_t j = 0; j < n; ++j) {
      if (!omega.is_valid(i, j)) continue;
      cost[i * n + j] = row_max - omega.value(i, j);
      scale = std::max(scale, cost[i * n + j]);
    }
  }

  // Shortest augmenting path Hungarian method with potentials u (rows) and
  // v (columns), 1-based with a virtual column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        if (omega.is_valid(i0 - 1, j - 1)) {
          const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0) throw NoFeasibleMatching("every assignment uses an infeasible cell");
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> col_of(n);
  std::vector<int> row_of(n);
  for (std::size_t j = 1; j <= n; ++j) {
    col_of[owner[j] - 1] = static_cast<int>(j - 1);
    row_of[j - 1] = static_cast<int>(owner[j] - 1);
  }

  // Every optimal permutation uses only edges with zero reduced cost under
  // the optimal potentials. Walk rows in order and move each one to the
  // smallest tight column that still admits a perfect tight matching of the
  // rows below it (found by an alternating path).
  const double tol = 1e-10 * (1.0 + scale);
  auto tight = [&](std::size_t i, std::size_t j) {
    return omega.is_valid(i, j) && cost[i * n + j] - u[i + 1] - v[j + 1] <= tol;
  };
  std::vector<char> locked(n, 0);
  std::vector<char> visited(n, 0);
  std::size_t target = 0;
  std::function<bool(std::size_t)> reroute = [&](std::size_t r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (locked[c] || visited[c] || !tight(r, c)) continue;
      visited[c] = 1;
      if (c == target || reroute(static_cast<std::size_t>(row_of[c]))) {
        col_of[r] = static_cast<int>(c);
        row_of[c] = static_cast<int>(r);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < static_cast<std::size_t>(col_of[i]); ++c) {
      if (locked[c] || !tight(i, c)) continue;
      target = static_cast<std::size_t>(col_of[i]);
      std::fill(visited.begin(), visited.end(), 0);
      visited[c] = 1;
      if (reroute(static_cast<std::size_t>(row_of[c]))) {
        col_of[i] = static_cast<int>(c);
        row_of[c] = static_cast<int>(i);
        break;
      }
    }
    locked[static_cast<std::size_t>(col_of[i])] = 1;
  }
  return col_of;
}

ReusePattern recover_pattern(const std::vector<int>& perm, std::size_t num_dues) {
  ReusePattern pattern;
  pattern.cue_of_due.assign(num_dues, -1);
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] >= 0 && static_cast<std::size_t>(perm[i]) < num_dues) pattern.cue_of_due[perm[i]] = static_cast<int>(i);
  return pattern;
}

}  // namespace semcom
