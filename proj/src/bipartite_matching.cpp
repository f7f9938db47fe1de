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

// Hopcroft-Karp over the threshold graph {(i, j) : entries[i][j] <= t}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "psb/error.hpp"
#include "psb/fitter.hpp"

namespace psb {
namespace {

constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

// Compressed adjacency: neighbours of value i are
// targets[offsets[i] .. offsets[i + 1]).
struct ThresholdGraph {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> targets;
};

ThresholdGraph BuildGraph(const DeviationMatrix& d, double threshold,
                          const kernels::KernelSet& kernels) {
  const std::size_t n = d.n();
  ThresholdGraph g;
  g.offsets.resize(n + 1, 0);
  g.targets.resize(n * n);
  std::size_t used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    used += kernels.select_le(d.row(i), threshold, g.targets.data() + used);
    g.offsets[i + 1] = used;
  }
  g.targets.resize(used);
  return g;
}

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const ThresholdGraph& g)
      : g_(g),
        n_(g.offsets.size() - 1),
        match_left_(n_, kNil),
        match_right_(n_, kNil),
        dist_(n_),
        cursor_(n_) {}

  // Keeps the pairs of a previous matching that are still edges here.
  void Seed(const DeviationMatrix& d, double threshold,
            const std::vector<std::uint32_t>& prior) {
    for (std::size_t u = 0; u < n_; ++u) {
      const std::uint32_t v = prior[u];
      if (v != kNil && d.at(u, v) <= threshold) {
        match_left_[u] = v;
        match_right_[v] = static_cast<std::uint32_t>(u);
      }
    }
  }

  std::size_t Run() {
    std::size_t matched = 0;
    for (const std::uint32_t v : match_left_) matched += v != kNil;
    while (Layer()) {
      for (std::size_t u = 0; u < n_; ++u) cursor_[u] = g_.offsets[u];
      for (std::size_t u = 0; u < n_; ++u) {
        if (match_left_[u] == kNil && Augment(static_cast<std::uint32_t>(u))) {
          ++matched;
        }
      }
    }
    return matched;
  }

  const std::vector<std::uint32_t>& match_left() const { return match_left_; }

 private:
  // BFS from all free values; true if some free position is reachable.
  bool Layer() {
    queue_.clear();
    for (std::size_t u = 0; u < n_; ++u) {
      if (match_left_[u] == kNil) {
        dist_[u] = 0;
        queue_.push_back(static_cast<std::uint32_t>(u));
      } else {
        dist_[u] = kUnreached;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const std::uint32_t u = queue_[head];
      for (std::size_t e = g_.offsets[u]; e < g_.offsets[u + 1]; ++e) {
        const std::uint32_t w = match_right_[g_.targets[e]];
        if (w == kNil) {
          found = true;
        } else if (dist_[w] == kUnreached) {
          dist_[w] = dist_[u] + 1;
          queue_.push_back(w);
        }
      }
    }
    return found;
  }

  // Iterative layered DFS; flips the path on success.
  bool Augment(std::uint32_t root) {
    stack_.clear();
    stack_.push_back(root);
    while (!stack_.empty()) {
      const std::uint32_t u = stack_.back();
      if (cursor_[u] == g_.offsets[u + 1]) {
        dist_[u] = kUnreached;
        stack_.pop_back();
        continue;
      }
      const std::uint32_t v = g_.targets[cursor_[u]];
      const std::uint32_t w = match_right_[v];
      if (w == kNil) {
        for (const std::uint32_t x : stack_) {
          const std::uint32_t y = g_.targets[cursor_[x]];
          match_left_[x] = y;
          match_right_[y] = x;
        }
        return true;
      }
      if (dist_[w] == dist_[u] + 1) {
        stack_.push_back(w);
      } else {
        ++cursor_[u];
      }
    }
    return false;
  }

  const ThresholdGraph& g_;
  std::size_t n_;
  std::vector<std::uint32_t> match_left_;
  std::vector<std::uint32_t> match_right_;
  std::vector<std::uint32_t> dist_;
  std::vector<std::size_t> cursor_;
  std::vector<std::uint32_t> queue_;
  std::vector<std::uint32_t> stack_;
};

}  // namespace

std::size_t MaxThresholdMatching(const DeviationMatrix& d, double threshold,
                                 std::vector<std::size_t>* match,
                                 const kernels::KernelSet& kernels) {
  if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
    throw InvalidArgument("threshold must be finite and non-negative");
  }
  const ThresholdGraph g = BuildGraph(d, threshold, kernels);
  HopcroftKarp hk(g);
  const std::size_t matched = hk.Run();
  if (match != nullptr) {
    match->assign(d.n(), SIZE_MAX);
    for (std::size_t i = 0; i < d.n(); ++i) {
      if (hk.match_left()[i] != kNil) (*match)[i] = hk.match_left()[i];
    }
  }
  return matched;
}

bool PerfectMatchingExists(const DeviationMatrix& d, double threshold,
                           const kernels::KernelSet& kernels) {
  return MaxThresholdMatching(d, threshold, nullptr, kernels) == d.n();
}

double FindMinThreshold(const DeviationMatrix& d,
                        const kernels::KernelSet& kernels) {
  const std::size_t n = d.n();
  const std::vector<double> ladder = ThresholdLadder(d);

  // Every value and every position needs some edge, so nothing below the
  // largest row or column minimum can work.
  std::vector<double> col_min(n, std::numeric_limits<double>::infinity());
  double floor = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = d.row(i);
    floor = std::max(floor, *std::min_element(row.begin(), row.end()));
    for (std::size_t j = 0; j < n; ++j) col_min[j] = std::min(col_min[j], row[j]);
  }
  floor = std::max(floor, *std::max_element(col_min.begin(), col_min.end()));

  // The complete graph at the top rung always has a perfect matching.
  std::size_t lo = static_cast<std::size_t>(
      std::lower_bound(ladder.begin(), ladder.end(), floor) - ladder.begin());
  std::size_t hi = ladder.size() - 1;

  // Matchings found at a larger threshold seed the next attempt; the pairs
  // that survive are valid, the rest get dropped.
  std::vector<std::uint32_t> best(n, kNil);
  while (lo != hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const ThresholdGraph g = BuildGraph(d, ladder[mid], kernels);
    HopcroftKarp hk(g);
    hk.Seed(d, ladder[mid], best);
    if (hk.Run() == n) {
      best = hk.match_left();
      // The largest edge in use is itself a feasible rung.
      double used = 0.0;
      for (std::size_t i = 0; i < n; ++i) used = std::max(used, d.at(i, best[i]));
      hi = static_cast<std::size_t>(
          std::lower_bound(ladder.begin(), ladder.begin() + mid + 1, used) -
          ladder.begin());
      if (hi < lo) hi = lo;
    } else {
      lo = mid + 1;
    }
  }
  return ladder[lo];
}

}  // namespace psb
