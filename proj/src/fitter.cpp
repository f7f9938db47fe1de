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

#include <cmath>

#include "psb/error.hpp"
#include "psb/feature_model.hpp"
#include "psb/fitter.hpp"

namespace psb {

FitResult FitToTargets(std::vector<double> y, std::vector<double> z,
                       const kernels::KernelSet& kernels) {
  const DeviationMatrix d(std::move(y), std::move(z), kernels);
  const std::size_t n = d.n();

  FitResult result;
  result.ordering.assign(n, 0);
  if (n == 1) {
    result.d_min = d.at(0, 0);
  } else {
    result.d_min = FindMinThreshold(d, kernels);
    const Matching m = MinCostPerfectMatching(d, result.d_min, kernels);
    for (std::size_t i = 0; i < n; ++i) {
      result.ordering[m.position_of_value[i]] = i;
    }
  }

  result.deviations.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    result.deviations[j] = d.at(result.ordering[j], j);
    result.total_cost += result.deviations[j];
  }
  result.normalized = d.y();
  result.targets = d.z();
  return result;
}

FitResult Fit(std::span<const double> values, const TemplateCurve& curve,
              const FitOptions& options) {
  if (values.empty()) throw InvalidArgument("nothing to fit");
  std::vector<double> y;
  if (options.pre_normalized) {
    for (double v : values) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InvalidArgument("pre-normalized values must lie in [0, 1]");
      }
    }
    y.assign(values.begin(), values.end());
  } else {
    y = Normalize(values);
  }
  std::vector<double> z = SamplePositions(curve, y.size());
  const kernels::KernelSet& kernels =
      options.kernels != nullptr ? *options.kernels : kernels::Active();
  return FitToTargets(std::move(y), std::move(z), kernels);
}

}  // namespace psb
