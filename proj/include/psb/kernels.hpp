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

#ifndef PSB_KERNELS_HPP_
#define PSB_KERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace psb::kernels {

// Result of one Hungarian relaxation sweep: the smallest reduced slack over
// the free columns and the first column attaining it.
struct RelaxResult {
  double delta;
  std::int32_t column;
};

// Data-parallel inner loops of the fitter. Every implementation must be
// bit-identical to the scalar reference on the same input.
struct KernelSet {
  std::string_view name;

  // out[i * n + j] = |y[i] - z[j]|, n = z.size(), out.size() = y.size() * n.
  void (*abs_deviation)(std::span<const double> y, std::span<const double> z,
                        std::span<double> out);

  // Writes the indices j with row[j] <= threshold, ascending, into out
  // (out.size() >= row.size()) and returns how many were written.
  std::size_t (*select_le)(std::span<const double> row, double threshold,
                           std::uint32_t* out);

  // out[k] = in[k] <= threshold ? in[k] : +inf.
  void (*mask_above)(std::span<const double> in, double threshold,
                     std::span<double> out);

  // For every column j with free[j] != 0:
  //   reduced = ((base + cost[j]) - row_potential) - col_potential[j]
  //   if reduced < slack[j]: slack[j] = reduced, way[j] = from
  // and returns the minimum slack[j] over free columns with the smallest
  // such j. Returns {+inf, -1} when no free column has finite slack.
  RelaxResult (*relax_argmin)(std::span<const double> cost, double base,
                              double row_potential,
                              std::span<const double> col_potential,
                              std::span<double> slack,
                              std::span<std::int32_t> way, std::int32_t from,
                              std::span<const std::int64_t> free);
};

const KernelSet& Scalar();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelSet* Avx2();

// Best supported variant. PSB_KERNELS=scalar forces the reference path.
const KernelSet& Active();

}  // namespace psb::kernels

#endif  // PSB_KERNELS_HPP_
