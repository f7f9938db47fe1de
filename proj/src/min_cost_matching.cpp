// Copyright 2026 The Playlist Story Builder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shortest augmenting path Hungarian method with deferred dual updates
// (Jonker-Volgenant style). Rows are values, columns positions. Edges above
// the bottleneck are priced at +inf and can never be chosen.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "psb/error.hpp"
#include "psb/fitter.hpp"

namespace psb {

Matching MinCostPerfectMatching(const DeviationMatrix& d, double max_edge,
                                const kernels::KernelSet& kernels) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::int32_t kNone = -1;
  const std::size_t n = d.n();

  std::vector<double> cost(n * n);
  kernels.mask_above(d.entries(), max_edge, cost);
  auto row_cost = [&](std::int32_t row) {
    return std::span<const double>(cost.data() + static_cast<std::size_t>(row) * n,
                                   n);
  };

  std::vector<double> row_pot(n, 0.0);
  std::vector<double> col_pot(n, 0.0);
  std::vector<std::int32_t> row_of_col(n, kNone);
  std::vector<std::int32_t> col_of_row(n, kNone);

  // Row reduction, then take every tight edge whose column is still open.
  // Reduced costs stay nonnegative and matched edges sit at zero.
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = row_cost(static_cast<std::int32_t>(i));
    const auto best = std::min_element(row.begin(), row.end());
    if (*best == kInf) {
      throw InfeasibleError(
          "no perfect matching uses only deviations <= threshold");
    }
    row_pot[i] = *best;
    const auto j = static_cast<std::size_t>(best - row.begin());
    if (row_of_col[j] == kNone) {
      row_of_col[j] = static_cast<std::int32_t>(i);
      col_of_row[i] = static_cast<std::int32_t>(j);
    }
  }

  std::vector<std::int32_t> path(n, kNone);
  std::vector<double> dist(n);
  std::vector<std::int64_t> free(n);
  std::vector<std::int32_t> seen_rows;
  std::vector<std::int32_t> seen_cols;

  for (std::size_t start = 0; start < n; ++start) {
    if (col_of_row[start] != kNone) continue;
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(free.begin(), free.end(), -1);
    seen_rows.clear();
    seen_cols.clear();

    auto row = static_cast<std::int32_t>(start);
    double reach = 0.0;
    std::int32_t sink = kNone;
    while (sink == kNone) {
      seen_rows.push_back(row);
      const kernels::RelaxResult step = kernels.relax_argmin(
          row_cost(row), reach, row_pot[row], col_pot, dist, path, row, free);
      if (step.column < 0) {
        throw InfeasibleError(
            "no perfect matching uses only deviations <= threshold");
      }
      reach = step.delta;
      free[step.column] = 0;
      seen_cols.push_back(step.column);
      if (row_of_col[step.column] == kNone) {
        sink = step.column;
      } else {
        row = row_of_col[step.column];
      }
    }

    // Settle the potentials of everything the search touched.
    row_pot[start] += reach;
    for (std::size_t k = 1; k < seen_rows.size(); ++k) {
      const std::int32_t r = seen_rows[k];
      row_pot[r] += reach - dist[col_of_row[r]];
    }
    for (const std::int32_t c : seen_cols) col_pot[c] -= reach - dist[c];

    // Flip the alternating path.
    std::int32_t col = sink;
    for (;;) {
      const std::int32_t r = path[col];
      row_of_col[col] = r;
      std::swap(col_of_row[r], col);
      if (r == static_cast<std::int32_t>(start)) break;
    }
  }

  Matching m;
  m.position_of_value.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    m.position_of_value[i] = static_cast<std::size_t>(col_of_row[i]);
  }
  return m;
}

}  // namespace psb
