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

// Scalar reference kernels. Every other variant is tested for bit-identical
// agreement with these.

#include <cmath>
#include <limits>

#include "psb/kernels.hpp"

namespace psb::kernels {
namespace {

void AbsDeviation(std::span<const double> y, std::span<const double> z,
                  std::span<double> out) {
  const std::size_t n = z.size();
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double yi = y[i];
    double* row = out.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] = std::abs(yi - z[j]);
  }
}

std::size_t SelectLe(std::span<const double> row, double threshold,
                     std::uint32_t* out) {
  std::size_t count = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] <= threshold) out[count++] = static_cast<std::uint32_t>(j);
  }
  return count;
}

void MaskAbove(std::span<const double> in, double threshold,
               std::span<double> out) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < in.size(); ++k) {
    out[k] = in[k] <= threshold ? in[k] : kInf;
  }
}

RelaxResult RelaxArgmin(std::span<const double> cost, double base,
                        double row_potential,
                        std::span<const double> col_potential,
                        std::span<double> slack, std::span<std::int32_t> way,
                        std::int32_t from, std::span<const std::int64_t> free) {
  RelaxResult best{std::numeric_limits<double>::infinity(), -1};
  for (std::size_t j = 0; j < cost.size(); ++j) {
    if (free[j] == 0) continue;
    const double reduced = base + cost[j] - row_potential - col_potential[j];
    if (reduced < slack[j]) {
      slack[j] = reduced;
      way[j] = from;
    }
    if (slack[j] < best.delta) {
      best.delta = slack[j];
      best.column = static_cast<std::int32_t>(j);
    }
  }
  return best;
}

constexpr KernelSet kScalar{
    "scalar", &AbsDeviation, &SelectLe, &MaskAbove, &RelaxArgmin,
};

}  // namespace

const KernelSet& Scalar() { return kScalar; }

}  // namespace psb::kernels
