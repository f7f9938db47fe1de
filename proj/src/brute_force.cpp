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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "psb/error.hpp"
#include "psb/fitter.hpp"

namespace psb {

FitResult BruteForceFit(std::span<const double> y, std::span<const double> z) {
  const std::size_t n = y.size();
  if (n != z.size()) throw InvalidArgument("brute force: length mismatch");
  if (n == 0) throw InvalidArgument("brute force: empty input");
  if (n > kBruteForceMaxSize) {
    throw InvalidArgument("brute force limited to " +
                          std::to_string(kBruteForceMaxSize) + " items");
  }

  std::vector<std::size_t> ordering(n);
  std::iota(ordering.begin(), ordering.end(), 0);
  FitResult best;
  best.d_min = std::numeric_limits<double>::infinity();
  best.total_cost = std::numeric_limits<double>::infinity();

  // next_permutation visits orderings in lexicographic order, so keeping
  // only strict improvements leaves the smallest ordering among ties.
  do {
    double worst = 0.0;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dev = std::abs(y[ordering[j]] - z[j]);
      worst = std::max(worst, dev);
      total += dev;
    }
    if (worst < best.d_min || (worst == best.d_min && total < best.total_cost)) {
      best.ordering = ordering;
      best.d_min = worst;
      best.total_cost = total;
    }
  } while (std::next_permutation(ordering.begin(), ordering.end()));

  best.deviations.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    best.deviations[j] = std::abs(y[best.ordering[j]] - z[j]);
  }
  best.normalized.assign(y.begin(), y.end());
  best.targets.assign(z.begin(), z.end());
  return best;
}

}  // namespace psb
