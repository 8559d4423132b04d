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

#include "artin/common.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace artin {

/// Unlabelled simple graph with bitset adjacency. Used for blowups,
/// augmented graphs and anything where edge labels play no role.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  explicit SimpleGraph(std::size_t n) : adjacency_(n, VertexMask(n)) {
    names_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) names_.push_back(std::to_string(i));
  }

  explicit SimpleGraph(std::vector<std::string> names)
      : names_(std::move(names)), adjacency_(names_.size(), VertexMask(names_.size())) {}

  std::size_t size() const noexcept { return names_.size(); }

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= size() || v >= size()) throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("self-loop on vertex '" + names_[u] + "'");
    adjacency_[u].set(v);
    adjacency_[v].set(u);
  }

  bool adjacent(std::size_t u, std::size_t v) const { return adjacency_[u].test(v); }
  const VertexMask& neighbours(std::size_t v) const { return adjacency_[v]; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].count(); }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& row : adjacency_) total += row.count();
    return total / 2;
  }

  /// Edges (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < size(); ++u)
      for (auto v = adjacency_[u].find_next(u); v != VertexMask::npos;
           v = adjacency_[u].find_next(v))
        out.emplace_back(u, v);
    return out;
  }

  const std::string& name(std::size_t v) const { return names_[v]; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  VertexMask all() const {
    VertexMask m(size());
    m.set();
    return m;
  }

  /// Subgraph spanned by `keep`, vertices renumbered in increasing order.
  SimpleGraph induced(const VertexMask& keep) const {
    auto idx = mask_to_indices(keep);
    std::vector<std::string> names;
    names.reserve(idx.size());
    for (auto i : idx) names.push_back(names_[i]);
    SimpleGraph out(std::move(names));
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        if (adjacent(idx[a], idx[b])) out.add_edge(a, b);
    return out;
  }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.names_ == b.names_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<VertexMask> adjacency_;
};

inline constexpr int kUnreachable = -1;

/// BFS distances from `source` inside the subgraph spanned by `allowed`.
/// Vertices outside `allowed` or not reachable get kUnreachable.
inline std::vector<int> bfs_distances(const SimpleGraph& g, std::size_t source,
                                      const VertexMask& allowed) {
  std::vector<int> dist(g.size(), kUnreachable);
  if (!allowed.test(source)) return dist;
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    const auto& nb = g.neighbours(u);
    for (auto v = nb.find_first(); v != VertexMask::npos; v = nb.find_next(v)) {
      if (dist[v] == kUnreachable && allowed.test(v)) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

inline std::vector<int> bfs_distances(const SimpleGraph& g, std::size_t source) {
  return bfs_distances(g, source, g.all());
}

/// Row-major all-pairs distance table of the subgraph spanned by `allowed`.
inline std::vector<std::vector<int>> all_pairs_distances(const SimpleGraph& g,
                                                         const VertexMask& allowed) {
  std::vector<std::vector<int>> out(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) out[s] = bfs_distances(g, s, allowed);
  return out;
}

/// Diameter of the subgraph spanned by `subset`; nullopt when it is
/// disconnected (infinite diameter). The empty set has diameter 0.
inline std::optional<int> diameter(const SimpleGraph& g, const VertexMask& subset) {
  int best = 0;
  for (auto s = subset.find_first(); s != VertexMask::npos; s = subset.find_next(s)) {
    auto dist = bfs_distances(g, s, subset);
    for (auto t = subset.find_first(); t != VertexMask::npos; t = subset.find_next(t)) {
      if (dist[t] == kUnreachable) return std::nullopt;
      best = std::max(best, dist[t]);
    }
  }
  return best;
}

/// Connected components of the subgraph spanned by `subset`, each as a
/// mask, ordered by least vertex.
inline std::vector<VertexMask> components(const SimpleGraph& g, const VertexMask& subset) {
  std::vector<VertexMask> out;
  VertexMask seen(g.size());
  for (auto s = subset.find_first(); s != VertexMask::npos; s = subset.find_next(s)) {
    if (seen.test(s)) continue;
    auto dist = bfs_distances(g, s, subset);
    VertexMask comp(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
      if (dist[v] != kUnreachable) comp.set(v);
    seen |= comp;
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace artin
