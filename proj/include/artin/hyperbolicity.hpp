// Copyright 2026 The artin-hhs Authors
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

#pragma once

// Four-point hyperbolicity constant of finite graphs.
//
// For a quadruple x, y, z, w let S1 >= S2 >= S3 be the three sums
// d(x,y)+d(z,w), d(x,z)+d(y,w), d(x,w)+d(y,z). The graph's constant is the
// maximum of (S1 - S2) / 2. Disconnected graphs are handled one component
// at a time. Cost is O(n^4) per component.

#include "artin/common.hpp"
#include "artin/simple_graph.hpp"

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace artin {

namespace detail {

/// Twice the four-point constant over quadruples whose least vertex lies in
/// [first, last) of `verts`.
inline int twice_delta_range(const std::vector<std::vector<int>>& d,
                             const std::vector<std::size_t>& verts, std::size_t first,
                             std::size_t last) {
  int best = 0;
  const std::size_t n = verts.size();
  for (std::size_t i = first; i < last; ++i) {
    const auto& di = d[verts[i]];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& dj = d[verts[j]];
      const int ij = di[verts[j]];
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto& dk = d[verts[k]];
        const int ik = di[verts[k]];
        const int jk = dj[verts[k]];
        for (std::size_t l = k + 1; l < n; ++l) {
          const std::size_t vl = verts[l];
          int s1 = ij + dk[vl];
          int s2 = ik + dj[vl];
          int s3 = di[vl] + jk;
          if (s1 < s2) std::swap(s1, s2);
          if (s2 < s3) std::swap(s2, s3);
          if (s1 < s2) std::swap(s1, s2);
          best = std::max(best, s1 - s2);
        }
      }
    }
  }
  return best;
}

}  // namespace detail

/// Exact four-point constant of the subgraph spanned by `subset`. `jobs`
/// splits the outer loop across threads; the result does not depend on it.
inline Rational hyperbolicity_delta(const SimpleGraph& g, const VertexMask& subset,
                                    unsigned jobs = 1) {
  auto dist = all_pairs_distances(g, subset);
  int best = 0;
  for (const auto& comp : components(g, subset)) {
    auto verts = mask_to_indices(comp);
    if (verts.size() < 4) continue;
    const std::size_t n = verts.size();
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (workers == 1) {
      best = std::max(best, detail::twice_delta_range(dist, verts, 0, n));
      continue;
    }
    // Strided rows balance the triangular work; max is order-independent.
    std::vector<int> partial(workers, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        int local = 0;
        for (std::size_t i = w; i < n; i += workers)
          local = std::max(local, detail::twice_delta_range(dist, verts, i, i + 1));
        partial[w] = local;
      });
    }
    for (auto& t : pool) t.join();
    best = std::max(best, *std::max_element(partial.begin(), partial.end()));
  }
  return Rational(best, 2);
}

inline Rational hyperbolicity_delta(const SimpleGraph& g, unsigned jobs = 1) {
  return hyperbolicity_delta(g, g.all(), jobs);
}

}  // namespace artin
