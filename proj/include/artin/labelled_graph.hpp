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

// Finite simplicial graphs with integer edge labels >= 2. A missing edge is
// the label infinity; the text format never writes it.

#include "artin/common.hpp"
#include "artin/simple_graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace artin {

using Vertex = std::size_t;
/// Vertex indices in increasing (= declaration) order.
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u;
  Vertex v;
  int label;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class GraphBuilder;

/// Immutable labelled graph. Vertex i is the i-th declared vertex; edges
/// keep their declaration order and orientation.
class LabelledGraph {
 public:
  LabelledGraph() = default;

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  const std::string& name(Vertex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<Vertex> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Vertex index(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw InvalidArgument("unknown vertex '" + std::string(name) + "'");
  }

  /// Edge label, or 0 when the vertices are not adjacent (label infinity).
  int label(Vertex a, Vertex b) const { return labels_[a * size() + b]; }
  bool adjacent(Vertex a, Vertex b) const { return label(a, b) != 0; }

  const VertexSet& neighbours(Vertex v) const { return neighbours_.at(v); }
  std::size_t degree(Vertex v) const { return neighbours_.at(v).size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return i;
    }
    return std::nullopt;
  }

  void check_vertex(Vertex v) const {
    if (v >= size()) throw InvalidArgument("vertex index " + std::to_string(v) + " out of range");
  }

  /// Subgraph spanned by `keep` (any order; result follows declaration order).
  LabelledGraph induced(const VertexSet& keep) const;

  SimpleGraph to_simple() const {
    SimpleGraph g(names_);
    for (const auto& e : edges_) g.add_edge(e.u, e.v);
    return g;
  }

  friend bool operator==(const LabelledGraph& a, const LabelledGraph& b) {
    return a.names_ == b.names_ && a.edges_ == b.edges_;
  }

 private:
  friend class GraphBuilder;

  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<int> labels_;  // dense size() x size()
  std::vector<VertexSet> neighbours_;
  std::vector<Edge> edges_;
};

/// Accumulates vertices and edges, validating each against the graph
/// invariants, then produces an immutable LabelledGraph.
class GraphBuilder {
 public:
  Vertex add_vertex(std::string name) {
    if (name.empty()) throw InvalidArgument("empty vertex identifier");
    if (index_.count(name)) throw InvalidArgument("duplicate vertex '" + name + "'");
    Vertex v = names_.size();
    index_.emplace(name, v);
    names_.push_back(std::move(name));
    return v;
  }

  std::optional<Vertex> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  GraphBuilder& add_edge(std::string_view a, std::string_view b, int label) {
    auto va = find(a);
    if (!va) throw InvalidArgument("undeclared endpoint '" + std::string(a) + "'");
    auto vb = find(b);
    if (!vb) throw InvalidArgument("undeclared endpoint '" + std::string(b) + "'");
    return add_edge(*va, *vb, label);
  }

  GraphBuilder& add_edge(Vertex a, Vertex b, int label) {
    if (a >= names_.size() || b >= names_.size())
      throw InvalidArgument("undeclared endpoint index");
    if (a == b) throw InvalidArgument("self-loop on vertex '" + names_[a] + "'");
    if (label < 2)
      throw InvalidArgument("label " + std::to_string(label) + " < 2 on edge " + names_[a] +
                            " " + names_[b]);
    if (!pairs_.insert(std::minmax(a, b)).second)
      throw InvalidArgument("duplicate edge " + names_[a] + " " + names_[b]);
    edges_.push_back({a, b, label});
    return *this;
  }

  std::size_t size() const noexcept { return names_.size(); }

  LabelledGraph build() const {
    LabelledGraph g;
    g.names_ = names_;
    g.index_ = index_;
    const std::size_t n = names_.size();
    g.labels_.assign(n * n, 0);
    g.neighbours_.assign(n, {});
    for (const auto& e : edges_) {
      g.labels_[e.u * n + e.v] = e.label;
      g.labels_[e.v * n + e.u] = e.label;
      g.neighbours_[e.u].push_back(e.v);
      g.neighbours_[e.v].push_back(e.u);
    }
    for (auto& nb : g.neighbours_) std::sort(nb.begin(), nb.end());
    g.edges_ = edges_;
    return g;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> index_;
  std::set<std::pair<Vertex, Vertex>> pairs_;
  std::vector<Edge> edges_;
};

inline LabelledGraph LabelledGraph::induced(const VertexSet& keep) const {
  VertexSet sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> remap(size(), static_cast<std::size_t>(-1));
  GraphBuilder b;
  for (auto v : sorted) {
    check_vertex(v);
    remap[v] = b.add_vertex(names_[v]);
  }
  for (const auto& e : edges_)
    if (remap[e.u] != static_cast<std::size_t>(-1) && remap[e.v] != static_cast<std::size_t>(-1))
      b.add_edge(remap[e.u], remap[e.v], e.label);
  return b.build();
}

/// Graph file grammar, one statement per line:
///   vertex <id>
///   edge <id> <id> <int >= 2>
/// `#` starts a comment; blank lines are ignored.
inline LabelledGraph parse_graph(std::string_view text) {
  GraphBuilder b;
  for (const auto& line : detail::tokenize_lines(text)) {
    const auto& head = line.tokens[0];
    if (head.text == "vertex") {
      if (line.tokens.size() != 2)
        throw ParseError(line.number, head.column, "expected 'vertex <id>'");
      try {
        b.add_vertex(line.tokens[1].text);
      } catch (const InvalidArgument& e) {
        throw ParseError(line.number, line.tokens[1].column, e.what());
      }
    } else if (head.text == "edge") {
      if (line.tokens.size() != 4)
        throw ParseError(line.number, head.column, "expected 'edge <id> <id> <label>'");
      const auto& ta = line.tokens[1];
      const auto& tb = line.tokens[2];
      auto va = b.find(ta.text);
      if (!va) throw ParseError(line.number, ta.column, "undeclared endpoint '" + ta.text + "'");
      auto vb = b.find(tb.text);
      if (!vb) throw ParseError(line.number, tb.column, "undeclared endpoint '" + tb.text + "'");
      int label = detail::parse_int_token(line, line.tokens[3], "edge label");
      if (label < 2)
        throw ParseError(line.number, line.tokens[3].column,
                         "label " + std::to_string(label) + " < 2");
      try {
        b.add_edge(*va, *vb, label);
      } catch (const InvalidArgument& e) {
        throw ParseError(line.number, head.column, e.what());
      }
    } else {
      throw ParseError(line.number, head.column, "unknown statement '" + head.text + "'");
    }
  }
  return b.build();
}

inline std::string to_text(const LabelledGraph& g) {
  std::string out;
  for (const auto& n : g.names()) out += "vertex " + n + "\n";
  for (const auto& e : g.edges())
    out += "edge " + g.name(e.u) + " " + g.name(e.v) + " " + std::to_string(e.label) + "\n";
  return out;
}

inline std::string to_dot(const LabelledGraph& g, std::string_view graph_name = "G") {
  std::string out = "graph " + std::string(graph_name) + " {\n";
  for (const auto& n : g.names()) out += "  \"" + n + "\";\n";
  for (const auto& e : g.edges())
    out += "  \"" + g.name(e.u) + "\" -- \"" + g.name(e.v) +
           "\" [label=" + std::to_string(e.label) + "];\n";
  out += "}\n";
  return out;
}

/// {"vertices": [...], "edges": [[u, v, m], ...]}
inline nlohmann::ordered_json to_json(const LabelledGraph& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.names();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : g.edges())
    edges.push_back(nlohmann::ordered_json::array({g.name(e.u), g.name(e.v), e.label}));
  j["edges"] = std::move(edges);
  return j;
}

inline VertexSet link(const LabelledGraph& g, Vertex v) {
  g.check_vertex(v);
  return g.neighbours(v);
}

inline VertexSet star(const LabelledGraph& g, Vertex v) {
  VertexSet s = link(g, v);
  s.insert(std::lower_bound(s.begin(), s.end(), v), v);
  return s;
}

/// All 3-cliques (a, b, c) with a < b < c, lexicographically ordered.
inline std::vector<std::array<Vertex, 3>> triangles(const LabelledGraph& g) {
  std::vector<std::array<Vertex, 3>> out;
  for (Vertex a = 0; a < g.size(); ++a)
    for (Vertex b : g.neighbours(a)) {
      if (b <= a) continue;
      for (Vertex c : g.neighbours(b))
        if (c > b && g.adjacent(a, c)) out.push_back({a, b, c});
    }
  return out;
}

/// Induced 4-cycles a-b-c-d-a, normalised so that a is the least vertex and
/// b < d; lexicographically ordered.
inline std::vector<std::array<Vertex, 4>> squares(const LabelledGraph& g) {
  std::vector<std::array<Vertex, 4>> out;
  for (Vertex a = 0; a < g.size(); ++a) {
    const auto& na = g.neighbours(a);
    for (Vertex b : na) {
      if (b <= a) continue;
      for (Vertex d : na) {
        if (d <= b || g.adjacent(b, d)) continue;
        for (Vertex c : g.neighbours(b))
          if (c > a && c != d && g.adjacent(c, d) && !g.adjacent(a, c))
            out.push_back({a, b, c, d});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_triangle_and_square_free(const LabelledGraph& g) {
  return triangles(g).empty() && squares(g).empty();
}

/// Connected components ordered by least vertex; each sorted.
inline std::vector<VertexSet> connected_components(const LabelledGraph& g) {
  std::vector<VertexSet> out;
  std::vector<bool> seen(g.size(), false);
  for (Vertex s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    VertexSet comp{s};
    seen[s] = true;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex w : g.neighbours(comp[i]))
        if (!seen[w]) {
          seen[w] = true;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const LabelledGraph& g) {
  return g.size() <= 1 || connected_components(g).size() == 1;
}

/// Same vertices, only the odd-labelled edges (declaration order kept).
inline LabelledGraph odd_subgraph(const LabelledGraph& g) {
  GraphBuilder b;
  for (const auto& n : g.names()) b.add_vertex(n);
  for (const auto& e : g.edges())
    if (e.label % 2 == 1) b.add_edge(e.u, e.v, e.label);
  return b.build();
}

}  // namespace artin
