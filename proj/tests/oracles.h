// Copyright 2026 The Authors.
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

// Independent reference computations used as test oracles. Nothing here
// calls into the library's algorithms.

#ifndef DOG_TESTS_ORACLES_H_
#define DOG_TESTS_ORACLES_H_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

namespace dog::oracle {

// |union of covers[a] for a in set|, by explicit set union.
inline int CoverageValue(const std::vector<std::vector<int>>& covers,
                         const std::vector<int>& set) {
  std::set<int> seen;
  for (int a : set) seen.insert(covers[a].begin(), covers[a].end());
  return static_cast<int>(seen.size());
}

// All-pairs hop counts by Floyd-Warshall; dist[from][to], -1 if unreachable.
inline std::vector<std::vector<int>> HopMatrix(
    int n, const std::vector<std::pair<int, int>>& edges) {
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [from, to] : edges) d[from][to] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  for (auto& row : d) {
    for (int& x : row) {
      if (x >= kInf) x = -1;
    }
  }
  return d;
}

// Definition-level checks over a value table indexed by bitmask; every pair
// and triple of masks is enumerated directly (no submask tricks).
inline bool IsMonotone(const std::vector<double>& f, int n) {
  const std::uint32_t count = 1u << n;
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      if ((a & ~b) == 0 && f[a] > f[b] + 1e-12) return false;
    }
  }
  return true;
}

inline bool IsSubmodular(const std::vector<double>& f, int n) {
  const std::uint32_t count = 1u << n;
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      if ((a & ~b) != 0) continue;
      for (int s = 0; s < n; ++s) {
        const std::uint32_t bit = 1u << s;
        if (f[a | bit] - f[a] < f[b | bit] - f[b] - 1e-12) return false;
      }
    }
  }
  return true;
}

inline bool IsSecondOrder(const std::vector<double>& f, int n) {
  const std::uint32_t count = 1u << n;
  auto gain = [&f](std::uint32_t set, std::uint32_t bit) {
    return f[set | bit] - f[set];
  };
  for (std::uint32_t a = 0; a < count; ++a) {
    for (std::uint32_t b = 0; b < count; ++b) {
      for (std::uint32_t c = 0; c < count; ++c) {
        if ((a & b) || (a & c) || (b & c)) continue;
        for (int s = 0; s < n; ++s) {
          const std::uint32_t bit = 1u << s;
          const double lhs = gain(c, bit) - gain(a | c, bit);
          const double rhs = gain(b | c, bit) - gain(a | b | c, bit);
          if (lhs < rhs - 1e-12) return false;
        }
      }
    }
  }
  return true;
}

// Random covers: each action sees each target independently with prob p.
inline std::vector<std::vector<int>> RandomCovers(std::mt19937_64& rng,
                                                  int actions, int targets,
                                                  double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::vector<int>> covers(actions);
  for (auto& cover : covers) {
    for (int k = 0; k < targets; ++k) {
      if (coin(rng)) cover.push_back(k);
    }
  }
  return covers;
}

}  // namespace dog::oracle

#endif  // DOG_TESTS_ORACLES_H_
