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

// AVX2 kernels, four doubles per register. Only compiled with -mavx2 and
// only selected when the CPU reports AVX2 support. No FMA: results must
// round exactly as the scalar reference does.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "psb/kernels.hpp"

namespace psb::kernels {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d Abs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

void AbsDeviation(std::span<const double> y, std::span<const double> z,
                  std::span<double> out) {
  const std::size_t n = z.size();
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double yi = y[i];
    const __m256d vy = _mm256_set1_pd(yi);
    double* row = out.data() + i * n;
    std::size_t j = 0;
    for (; j < body; j += kLanes) {
      const __m256d vz = _mm256_loadu_pd(z.data() + j);
      _mm256_storeu_pd(row + j, Abs(_mm256_sub_pd(vy, vz)));
    }
    for (; j < n; ++j) row[j] = std::abs(yi - z[j]);
  }
}

std::size_t SelectLe(std::span<const double> row, double threshold,
                     std::uint32_t* out) {
  const std::size_t n = row.size();
  const std::size_t body = n - n % kLanes;
  const __m256d vt = _mm256_set1_pd(threshold);
  std::size_t count = 0;
  std::size_t j = 0;
  for (; j < body; j += kLanes) {
    const __m256d v = _mm256_loadu_pd(row.data() + j);
    int bits = _mm256_movemask_pd(_mm256_cmp_pd(v, vt, _CMP_LE_OQ));
    while (bits != 0) {
      const int lane = __builtin_ctz(bits);
      out[count++] = static_cast<std::uint32_t>(j + lane);
      bits &= bits - 1;
    }
  }
  for (; j < n; ++j) {
    if (row[j] <= threshold) out[count++] = static_cast<std::uint32_t>(j);
  }
  return count;
}

void MaskAbove(std::span<const double> in, double threshold,
               std::span<double> out) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t n = in.size();
  const std::size_t body = n - n % kLanes;
  const __m256d vt = _mm256_set1_pd(threshold);
  const __m256d vinf = _mm256_set1_pd(kInf);
  std::size_t k = 0;
  for (; k < body; k += kLanes) {
    const __m256d v = _mm256_loadu_pd(in.data() + k);
    const __m256d keep = _mm256_cmp_pd(v, vt, _CMP_LE_OQ);
    _mm256_storeu_pd(out.data() + k, _mm256_blendv_pd(vinf, v, keep));
  }
  for (; k < n; ++k) out[k] = in[k] <= threshold ? in[k] : kInf;
}

RelaxResult RelaxArgmin(std::span<const double> cost, double base,
                        double row_potential,
                        std::span<const double> col_potential,
                        std::span<double> slack, std::span<std::int32_t> way,
                        std::int32_t from, std::span<const std::int64_t> free) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t n = cost.size();
  const std::size_t body = n - n % kLanes;
  const __m256d vbase = _mm256_set1_pd(base);
  const __m256d vrow = _mm256_set1_pd(row_potential);

  // Per-lane running minimum and the first column that reached it.
  __m256d best = _mm256_set1_pd(kInf);
  __m256d best_col = _mm256_set1_pd(-1.0);
  __m256d col = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d step = _mm256_set1_pd(static_cast<double>(kLanes));

  std::size_t j = 0;
  for (; j < body; j += kLanes, col = _mm256_add_pd(col, step)) {
    const __m256d is_free = _mm256_castsi256_pd(_mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(free.data() + j)));
    const __m256d reduced = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_add_pd(vbase, _mm256_loadu_pd(cost.data() + j)),
                      vrow),
        _mm256_loadu_pd(col_potential.data() + j));
    __m256d s = _mm256_loadu_pd(slack.data() + j);
    const __m256d improve =
        _mm256_and_pd(_mm256_cmp_pd(reduced, s, _CMP_LT_OQ), is_free);
    int bits = _mm256_movemask_pd(improve);
    if (bits != 0) {
      s = _mm256_blendv_pd(s, reduced, improve);
      _mm256_storeu_pd(slack.data() + j, s);
      while (bits != 0) {
        way[j + __builtin_ctz(bits)] = from;
        bits &= bits - 1;
      }
    }
    const __m256d lower =
        _mm256_and_pd(_mm256_cmp_pd(s, best, _CMP_LT_OQ), is_free);
    best = _mm256_blendv_pd(best, s, lower);
    best_col = _mm256_blendv_pd(best_col, col, lower);
  }

  alignas(32) double lane_best[kLanes];
  alignas(32) double lane_col[kLanes];
  _mm256_store_pd(lane_best, best);
  _mm256_store_pd(lane_col, best_col);
  RelaxResult result{kInf, -1};
  for (std::size_t lane = 0; lane < kLanes; ++lane) {
    if (lane_col[lane] < 0.0) continue;
    const auto c = static_cast<std::int32_t>(lane_col[lane]);
    if (lane_best[lane] < result.delta ||
        (lane_best[lane] == result.delta && c < result.column)) {
      result.delta = lane_best[lane];
      result.column = c;
    }
  }

  for (; j < n; ++j) {
    if (free[j] == 0) continue;
    const double reduced = base + cost[j] - row_potential - col_potential[j];
    if (reduced < slack[j]) {
      slack[j] = reduced;
      way[j] = from;
    }
    if (slack[j] < result.delta) {
      result.delta = slack[j];
      result.column = static_cast<std::int32_t>(j);
    }
  }
  return result;
}

constexpr KernelSet kAvx2{
    "avx2", &AbsDeviation, &SelectLe, &MaskAbove, &RelaxArgmin,
};

}  // namespace

const KernelSet& Avx2Impl() { return kAvx2; }

}  // namespace psb::kernels
