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

// Every kernel variant must agree bit for bit with the scalar reference.

#include "psb/kernels.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "psb/fitter.hpp"

namespace psb::kernels {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<const KernelSet*> Variants() {
  std::vector<const KernelSet*> out;
  if (const KernelSet* avx2 = Avx2()) out.push_back(avx2);
  return out;
}

bool BitEqual(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Values drawn from a small grid so ties and threshold hits are common.
std::vector<double> Coarse(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = static_cast<double>(rng() % 9) / 8.0;
  return v;
}

std::vector<double> Fine(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

TEST(KernelsTest, ActiveIsScalarOrAVariant) {
  const KernelSet& active = Active();
  EXPECT_TRUE(&active == &Scalar() || &active == Avx2());
  EXPECT_EQ(Scalar().name, "scalar");
}

TEST(KernelsTest, AbsDeviationEquivalence) {
  const auto variants = Variants();
  if (variants.empty()) GTEST_SKIP() << "no SIMD variant on this machine";
  std::mt19937_64 rng(1);
  for (std::size_t n = 1; n <= 37; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const auto y = rep % 2 ? Coarse(rng, n) : Fine(rng, n);
      const auto z = Fine(rng, n);
      std::vector<double> ref(n * n), got(n * n);
      Scalar().abs_deviation(y, z, ref);
      for (const KernelSet* k : variants) {
        k->abs_deviation(y, z, got);
        EXPECT_TRUE(BitEqual(ref, got)) << k->name << " n=" << n;
      }
    }
  }
}

TEST(KernelsTest, SelectLeAndMaskAboveEquivalence) {
  const auto variants = Variants();
  if (variants.empty()) GTEST_SKIP() << "no SIMD variant on this machine";
  std::mt19937_64 rng(2);
  for (std::size_t n = 0; n <= 37; ++n) {
    for (int rep = 0; rep < 6; ++rep) {
      auto row = rep % 2 ? Coarse(rng, n) : Fine(rng, n);
      if (n > 0 && rep == 4) row[n - 1] = kInf;
      const double threshold = static_cast<double>(rng() % 9) / 8.0;

      std::vector<std::uint32_t> ref_idx(n + 1), got_idx(n + 1);
      const std::size_t ref_count = Scalar().select_le(row, threshold, ref_idx.data());
      std::vector<double> ref_mask(n), got_mask(n);
      Scalar().mask_above(row, threshold, ref_mask);
      for (const KernelSet* k : variants) {
        const std::size_t count = k->select_le(row, threshold, got_idx.data());
        ASSERT_EQ(count, ref_count) << k->name;
        for (std::size_t c = 0; c < count; ++c) EXPECT_EQ(got_idx[c], ref_idx[c]);
        k->mask_above(row, threshold, got_mask);
        EXPECT_TRUE(BitEqual(ref_mask, got_mask)) << k->name;
      }
    }
  }
}

TEST(KernelsTest, RelaxArgminEquivalence) {
  const auto variants = Variants();
  if (variants.empty()) GTEST_SKIP() << "no SIMD variant on this machine";
  std::mt19937_64 rng(3);
  for (std::size_t n = 0; n <= 37; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      auto cost = rep % 2 ? Coarse(rng, n) : Fine(rng, n);
      for (double& c : cost) {
        if (rng() % 5 == 0) c = kInf;
      }
      auto col_pot = Coarse(rng, n);
      for (double& p : col_pot) p -= 0.5;
      std::vector<double> slack(n);
      for (double& s : slack) s = rng() % 3 == 0 ? kInf : Coarse(rng, 1)[0];
      std::vector<std::int32_t> way(n, -7);
      std::vector<std::int64_t> free(n);
      for (auto& f : free) f = rng() % 4 == 0 ? 0 : -1;
      if (rep == 7) std::fill(free.begin(), free.end(), 0);
      const double row_pot = static_cast<double>(rng() % 5) / 8.0;
      const double base = rep % 3 == 0 ? 0.0 : Fine(rng, 1)[0];

      auto ref_slack = slack;
      auto ref_way = way;
      const RelaxResult ref = Scalar().relax_argmin(
          cost, base, row_pot, col_pot, ref_slack, ref_way, 42, free);
      for (const KernelSet* k : variants) {
        auto got_slack = slack;
        auto got_way = way;
        const RelaxResult got =
            k->relax_argmin(cost, base, row_pot, col_pot, got_slack, got_way, 42,
                            free);
        EXPECT_EQ(got.column, ref.column) << k->name << " n=" << n;
        EXPECT_EQ(std::memcmp(&got.delta, &ref.delta, sizeof(double)), 0);
        EXPECT_TRUE(BitEqual(ref_slack, got_slack));
        EXPECT_EQ(ref_way, got_way);
      }
    }
  }
}

TEST(KernelsTest, FitIdenticalAcrossVariants) {
  const auto variants = Variants();
  if (variants.empty()) GTEST_SKIP() << "no SIMD variant on this machine";
  std::mt19937_64 rng(4);
  const TemplateCurve curve = DefaultNarrativeCurve();
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 70;
    const auto values = trial % 2 ? Coarse(rng, n) : Fine(rng, n);
    const FitResult ref = Fit(values, curve, {.kernels = &Scalar()});
    for (const KernelSet* k : variants) {
      const FitResult got = Fit(values, curve, {.kernels = k});
      EXPECT_EQ(got.ordering, ref.ordering) << k->name;
      EXPECT_EQ(got.d_min, ref.d_min);
      EXPECT_EQ(got.total_cost, ref.total_cost);
    }
  }
}

}  // namespace
}  // namespace psb::kernels
