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

#include "psb/error.hpp"
#include "psb/fitter.hpp"

namespace psb {
namespace {

void CheckUnitInterval(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw InvalidArgument(std::string(what) + " entries must lie in [0, 1]");
    }
  }
}

}  // namespace

DeviationMatrix::DeviationMatrix(std::vector<double> y, std::vector<double> z,
                                 const kernels::KernelSet& kernels)
    : n_(y.size()), y_(std::move(y)), z_(std::move(z)) {
  if (y_.size() != z_.size()) {
    throw InvalidArgument("deviation matrix: " + std::to_string(y_.size()) +
                          " values vs " + std::to_string(z_.size()) +
                          " positions");
  }
  if (n_ == 0) throw InvalidArgument("deviation matrix: empty input");
  CheckUnitInterval(y_, "value");
  CheckUnitInterval(z_, "position target");
  entries_.resize(n_ * n_);
  kernels.abs_deviation(y_, z_, entries_);
}

std::vector<double> ThresholdLadder(const DeviationMatrix& d) {
  std::vector<double> ladder(d.entries().begin(), d.entries().end());
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  return ladder;
}

std::vector<std::pair<std::size_t, std::size_t>> Matching::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(position_of_value.size());
  for (std::size_t i = 0; i < position_of_value.size(); ++i) {
    out.emplace_back(i, position_of_value[i]);
  }
  return out;
}

}  // namespace psb
