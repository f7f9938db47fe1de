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

#ifndef PSB_FITTER_HPP_
#define PSB_FITTER_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "psb/kernels.hpp"
#include "psb/template_curve.hpp"

namespace psb {

// entries[i][j] = |y[i] - z[j]| for value i against position j, stored
// row-major alongside the vectors it was computed from.
class DeviationMatrix {
 public:
  DeviationMatrix(std::vector<double> y, std::vector<double> z,
                  const kernels::KernelSet& kernels = kernels::Active());

  std::size_t n() const { return n_; }
  const std::vector<double>& y() const { return y_; }
  const std::vector<double>& z() const { return z_; }

  double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }
  std::span<const double> entries() const { return entries_; }

 private:
  std::size_t n_;
  std::vector<double> y_;
  std::vector<double> z_;
  std::vector<double> entries_;
};

inline DeviationMatrix ComputeDeviationMatrix(std::vector<double> y,
                                              std::vector<double> z) {
  return DeviationMatrix(std::move(y), std::move(z));
}

// Every distinct matrix entry, strictly ascending.
std::vector<double> ThresholdLadder(const DeviationMatrix& d);

// Value index -> position index. Perfect: a permutation.
struct Matching {
  std::vector<std::size_t> position_of_value;

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
};

// Hopcroft-Karp maximum cardinality matching over the edges with
// entries[i][j] <= threshold. Returns the number of matched values and, if
// `match` is non-null, fills match[i] with the position of value i (or
// SIZE_MAX when unmatched).
std::size_t MaxThresholdMatching(const DeviationMatrix& d, double threshold,
                                 std::vector<std::size_t>* match = nullptr,
                                 const kernels::KernelSet& kernels =
                                     kernels::Active());

bool PerfectMatchingExists(const DeviationMatrix& d, double threshold,
                           const kernels::KernelSet& kernels =
                               kernels::Active());

// Smallest ladder entry admitting a perfect matching (bottleneck value).
double FindMinThreshold(const DeviationMatrix& d,
                        const kernels::KernelSet& kernels = kernels::Active());

// Minimum total deviation perfect matching restricted to edges with
// entries[i][j] <= max_edge. Shortest augmenting path Hungarian method,
// O(n^3). Throws InfeasibleError when no such perfect matching exists.
Matching MinCostPerfectMatching(const DeviationMatrix& d, double max_edge,
                                const kernels::KernelSet& kernels =
                                    kernels::Active());

struct FitResult {
  // ordering[j] = index of the value placed at position j.
  std::vector<std::size_t> ordering;
  double d_min = 0.0;
  // deviations[j] = |y[ordering[j]] - z[j]|.
  std::vector<double> deviations;
  double total_cost = 0.0;
  // Values and targets the fit was computed on.
  std::vector<double> normalized;
  std::vector<double> targets;

  friend bool operator==(const FitResult&, const FitResult&) = default;
};

struct FitOptions {
  // Treat the input as already normalized to [0, 1].
  bool pre_normalized = false;
  const kernels::KernelSet* kernels = nullptr;
};

// Orders values so that they trace the curve: minimal maximum deviation
// first, then minimal total deviation among bottleneck-optimal orderings.
FitResult Fit(std::span<const double> values, const TemplateCurve& curve,
              const FitOptions& options = {});

// Fits normalized values to explicit targets.
FitResult FitToTargets(std::vector<double> y, std::vector<double> z,
                       const kernels::KernelSet& kernels = kernels::Active());

inline constexpr std::size_t kBruteForceMaxSize = 10;

// Exhaustive reference: minimizes (max deviation, total deviation)
// lexicographically over all n! orderings; ties go to the lexicographically
// smallest ordering vector.
FitResult BruteForceFit(std::span<const double> y, std::span<const double> z);

}  // namespace psb

#endif  // PSB_FITTER_HPP_
