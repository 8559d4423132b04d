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

// Structural classification of Artin defining graphs: type flags, odd
// components and their hanging behaviour, the product region graph, ranks
// in the abelianisation, and the decision procedure for the Hopf theorem
// on large, hyperbolic type Artin groups.

#include "artin/common.hpp"
#include "artin/labelled_graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace artin {

struct TypeFlags {
  bool large = true;             // every label >= 3
  bool hyperbolic = true;        // every triangle has 1/p + 1/q + 1/r < 1
  bool even = true;              // every label even
  bool extra_large = true;       // every label >= 4
  bool xxxl = true;              // every label >= 6
  bool free_of_infinity = true;  // complete graph
  bool connected = true;

  friend bool operator==(const TypeFlags&, const TypeFlags&) = default;
};

/// 1/p + 1/q + 1/r < 1, evaluated exactly.
inline bool triangle_is_hyperbolic(int p, int q, int r) {
  return Rational(1, p) + Rational(1, q) + Rational(1, r) < Rational(1);
}

inline TypeFlags type_flags(const LabelledGraph& g) {
  TypeFlags f;
  for (const auto& e : g.edges()) {
    f.large = f.large && e.label >= 3;
    f.extra_large = f.extra_large && e.label >= 4;
    f.xxxl = f.xxxl && e.label >= 6;
    f.even = f.even && e.label % 2 == 0;
  }
  for (const auto& t : triangles(g)) {
    if (!triangle_is_hyperbolic(g.label(t[0], t[1]), g.label(t[1], t[2]), g.label(t[0], t[2]))) {
      f.hyperbolic = false;
      break;
    }
  }
  const std::size_t n = g.size();
  f.free_of_infinity = g.edges().size() == n * (n - (n > 0 ? 1 : 0)) / 2;
  f.connected = is_connected(g);
  return f;
}

enum class HangingKind { kNotHanging, kBroad, kNeedle, kForbiddenSingleton };

inline const char* to_string(HangingKind k) {
  switch (k) {
    case HangingKind::kNotHanging: return "not-hanging";
    case HangingKind::kBroad: return "broad";
    case HangingKind::kNeedle: return "needle";
    case HangingKind::kForbiddenSingleton: return "forbidden-singleton";
  }
  return "?";
}

/// Odd components of a labelled graph, the odd component graph, and the
/// hanging classification of each component.
struct OddDecomposition {
  /// Components ordered by least vertex, each sorted.
  std::vector<VertexSet> components;
  /// component_of[v] indexes `components`.
  std::vector<std::size_t> component_of;
  /// Sorted neighbour lists of the odd component graph.
  std::vector<std::vector<std::size_t>> oc_adjacency;
  std::vector<HangingKind> hanging;

  std::size_t count() const noexcept { return components.size(); }
  bool is_hanging(std::size_t c) const { return hanging.at(c) != HangingKind::kNotHanging; }
};

/// A component is hanging when it is a leaf of the odd component graph,
/// i.e. has exactly one neighbour there.
inline OddDecomposition odd_decomposition(const LabelledGraph& g) {
  OddDecomposition d;
  d.components = connected_components(odd_subgraph(g));
  d.component_of.assign(g.size(), 0);
  for (std::size_t c = 0; c < d.components.size(); ++c)
    for (Vertex v : d.components[c]) d.component_of[v] = c;

  d.oc_adjacency.assign(d.components.size(), {});
  for (const auto& e : g.edges()) {
    if (e.label % 2 != 0) continue;
    auto cu = d.component_of[e.u];
    auto cv = d.component_of[e.v];
    if (cu == cv) continue;
    d.oc_adjacency[cu].push_back(cv);
    d.oc_adjacency[cv].push_back(cu);
  }
  for (auto& nb : d.oc_adjacency) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  d.hanging.assign(d.components.size(), HangingKind::kNotHanging);
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    if (d.oc_adjacency[c].size() != 1) continue;
    const auto& comp = d.components[c];
    if (comp.size() > 1)
      d.hanging[c] = HangingKind::kBroad;
    else if (g.degree(comp[0]) == 1)
      d.hanging[c] = HangingKind::kNeedle;
    else
      d.hanging[c] = HangingKind::kForbiddenSingleton;
  }
  return d;
}

/// Vertices of valence one whose unique edge carries an even label.
inline VertexSet even_leaf_tips(const LabelledGraph& g) {
  VertexSet out;
  for (Vertex v = 0; v < g.size(); ++v)
    if (g.degree(v) == 1 && g.label(v, g.neighbours(v)[0]) % 2 == 0) out.push_back(v);
  return out;
}

/// Bipartite graph with one node per retained odd component and one per
/// edge of the defining graph. A component is joined to an edge node when it
/// contains an endpoint of that edge.
struct PRGraph {
  enum class Kind { kComponent, kEdge };
  struct Node {
    Kind kind;
    /// Component index (into the OddDecomposition) or edge index (into
    /// LabelledGraph::edges()).
    std::size_t index;
    friend bool operator==(const Node&, const Node&) = default;
  };

  std::vector<Node> nodes;  // components first, then edges
  std::vector<std::vector<std::size_t>> adjacency;

  std::size_t size() const noexcept { return nodes.size(); }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& nb : adjacency) total += nb.size();
    return total / 2;
  }

  std::optional<std::size_t> component_node(std::size_t component) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].kind == Kind::kComponent && nodes[i].index == component) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> edge_node(std::size_t edge) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].kind == Kind::kEdge && nodes[i].index == edge) return i;
    return std::nullopt;
  }
};

inline void require_pr_hypotheses(const LabelledGraph& g) {
  if (g.size() < 3) throw HypothesisError("product region graph needs at least 3 vertices");
  if (!is_connected(g)) throw HypothesisError("product region graph needs a connected graph");
  for (const auto& e : g.edges())
    if (e.label < 3)
      throw HypothesisError("product region graph needs large type (edge " + g.name(e.u) + " " +
                            g.name(e.v) + " has label " + std::to_string(e.label) + ")");
}

/// Throws HypothesisError unless g is connected, has at least 3 vertices and
/// is of large type.
inline PRGraph product_region_graph(const LabelledGraph& g, const OddDecomposition& d) {
  require_pr_hypotheses(g);
  auto tips = even_leaf_tips(g);
  PRGraph pr;
  for (std::size_t c = 0; c < d.count(); ++c) {
    bool all_tips = std::all_of(d.components[c].begin(), d.components[c].end(), [&](Vertex v) {
      return std::binary_search(tips.begin(), tips.end(), v);
    });
    if (!all_tips) pr.nodes.push_back({PRGraph::Kind::kComponent, c});
  }
  const std::size_t first_edge = pr.nodes.size();
  for (std::size_t i = 0; i < g.edges().size(); ++i) pr.nodes.push_back({PRGraph::Kind::kEdge, i});
  pr.adjacency.assign(pr.nodes.size(), {});
  for (std::size_t ci = 0; ci < first_edge; ++ci) {
    auto c = pr.nodes[ci].index;
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
      const auto& e = g.edges()[i];
      if (d.component_of[e.u] == c || d.component_of[e.v] == c) {
        pr.adjacency[ci].push_back(first_edge + i);
        pr.adjacency[first_edge + i].push_back(ci);
      }
    }
  }
  for (auto& nb : pr.adjacency) std::sort(nb.begin(), nb.end());
  return pr;
}

inline PRGraph product_region_graph(const LabelledGraph& g) {
  require_pr_hypotheses(g);
  return product_region_graph(g, odd_decomposition(g));
}

/// True iff deleting the given component nodes (node indices of `pr`)
/// leaves no edges. Throws InvalidArgument if an index is out of range or
/// names an edge node.
inline bool pr_discrete_after_removal(const PRGraph& pr, const std::vector<std::size_t>& removed) {
  std::vector<bool> gone(pr.size(), false);
  for (auto i : removed) {
    if (i >= pr.size()) throw InvalidArgument("node index out of range");
    if (pr.nodes[i].kind != PRGraph::Kind::kComponent)
      throw InvalidArgument("node " + std::to_string(i) + " is not a component node");
    gone[i] = true;
  }
  for (std::size_t u = 0; u < pr.size(); ++u) {
    if (gone[u]) continue;
    for (auto w : pr.adjacency[u])
      if (!gone[w]) return false;
  }
  return true;
}

inline std::string pr_node_name(const LabelledGraph& g, const OddDecomposition& d,
                                const PRGraph::Node& node) {
  if (node.kind == PRGraph::Kind::kEdge) {
    const auto& e = g.edges()[node.index];
    return "e_" + g.name(e.u) + g.name(e.v);
  }
  std::string s = "O{";
  const auto& comp = d.components[node.index];
  for (std::size_t i = 0; i < comp.size(); ++i) s += (i ? "," : "") + g.name(comp[i]);
  return s + "}";
}

inline std::string pr_to_dot(const LabelledGraph& g, const OddDecomposition& d, const PRGraph& pr) {
  std::string out = "graph PR {\n";
  for (const auto& node : pr.nodes) {
    out += "  \"" + pr_node_name(g, d, node) + "\" [shape=" +
           (node.kind == PRGraph::Kind::kComponent ? "box" : "ellipse") + "];\n";
  }
  for (std::size_t u = 0; u < pr.size(); ++u)
    for (auto w : pr.adjacency[u])
      if (u < w)
        out += "  \"" + pr_node_name(g, d, pr.nodes[u]) + "\" -- \"" +
               pr_node_name(g, d, pr.nodes[w]) + "\";\n";
  out += "}\n";
  return out;
}

/// Rank of the abelianisation: one free generator per odd component.
inline std::size_t abelianization_rank(const LabelledGraph& g) {
  return odd_decomposition(g).count();
}

/// Rank of the image of a vertex stabiliser in the abelianisation, either
/// exact or a lower bound.
struct StabilizerRank {
  std::size_t value = 0;
  bool lower_bound = false;

  std::string to_string() const {
    return (lower_bound ? ">=" : "") + std::to_string(value);
  }
  friend bool operator==(const StabilizerRank&, const StabilizerRank&) = default;
};

struct DihedralClass {
  Vertex a;
  Vertex b;
};
struct CentralizerClass {
  Vertex a;
};
using StabilizerClass = std::variant<DihedralClass, CentralizerClass>;

/// Dihedral A_ab: 1 if a, b share an odd component, else 2.
/// Centraliser C(a): 1 with a single odd component, 2 if a lies in a hanging
/// component, otherwise a lower bound of 1 + (valence of a's component in
/// the odd component graph), which is at least 3.
inline StabilizerRank stabilizer_image_rank(const LabelledGraph& g, const StabilizerClass& which) {
  auto d = odd_decomposition(g);
  if (const auto* di = std::get_if<DihedralClass>(&which)) {
    g.check_vertex(di->a);
    g.check_vertex(di->b);
    if (!g.adjacent(di->a, di->b))
      throw InvalidArgument("no edge between '" + g.name(di->a) + "' and '" + g.name(di->b) + "'");
    return {d.component_of[di->a] == d.component_of[di->b] ? 1u : 2u, false};
  }
  const auto& ce = std::get<CentralizerClass>(which);
  g.check_vertex(ce.a);
  if (!is_connected(g) || g.size() < 3)
    throw HypothesisError("centraliser ranks need a connected graph on at least 3 vertices");
  auto c = d.component_of[ce.a];
  if (d.count() == 1) return {1, false};
  if (d.is_hanging(c)) return {2, false};
  return {1 + d.oc_adjacency[c].size(), true};
}

enum class HopfOutcome { kHopfian, kUnknown };

enum class HopfBranch {
  kSmall,
  kFreeProduct,
  kSingleOdd,
  kThreePlusOdd,
  kTwoOddNeedle,
  kTwoOddBroad,
  kFailsHypotheses,
};

inline const char* to_string(HopfOutcome o) {
  return o == HopfOutcome::kHopfian ? "HOPFIAN" : "UNKNOWN";
}

inline const char* to_string(HopfBranch b) {
  switch (b) {
    case HopfBranch::kSmall: return "small";
    case HopfBranch::kFreeProduct: return "free-product";
    case HopfBranch::kSingleOdd: return "single-odd";
    case HopfBranch::kThreePlusOdd: return "three-plus-odd";
    case HopfBranch::kTwoOddNeedle: return "two-odd-needle";
    case HopfBranch::kTwoOddBroad: return "two-odd-broad";
    case HopfBranch::kFailsHypotheses: return "fails-hypotheses";
  }
  return "?";
}

struct Obstruction {
  enum class Kind { kNonLargeLabel, kNonHyperbolicTriangle, kForbiddenSingleton };
  Kind kind;
  VertexSet vertices;  // the edge, the triangle, or the singleton

  friend bool operator==(const Obstruction&, const Obstruction&) = default;
};

inline std::string describe(const LabelledGraph& g, const Obstruction& o) {
  std::string set = "{";
  for (std::size_t i = 0; i < o.vertices.size(); ++i) set += (i ? "," : "") + g.name(o.vertices[i]);
  set += "}";
  switch (o.kind) {
    case Obstruction::Kind::kNonLargeLabel:
      return "label " + std::to_string(g.label(o.vertices[0], o.vertices[1])) + " < 3 on edge " +
             set;
    case Obstruction::Kind::kNonHyperbolicTriangle:
      return "triangle " + set + " has label reciprocals summing to at least 1";
    case Obstruction::Kind::kForbiddenSingleton:
      return "forbidden singleton hanging component " + set;
  }
  return set;
}

inline const char* obstruction_tag(Obstruction::Kind k) {
  switch (k) {
    case Obstruction::Kind::kNonLargeLabel: return "non-large-label";
    case Obstruction::Kind::kNonHyperbolicTriangle: return "non-hyperbolic-triangle";
    case Obstruction::Kind::kForbiddenSingleton: return "forbidden-singleton";
  }
  return "?";
}

struct HopfVerdict {
  HopfOutcome outcome = HopfOutcome::kUnknown;
  HopfBranch branch = HopfBranch::kFailsHypotheses;
  std::vector<Obstruction> obstructions;  // vertex indices of the input graph

  bool hopfian() const noexcept { return outcome == HopfOutcome::kHopfian; }
};

namespace detail {

inline HopfVerdict connected_verdict(const LabelledGraph& g) {
  if (g.size() <= 2) return {HopfOutcome::kHopfian, HopfBranch::kSmall, {}};
  auto d = odd_decomposition(g);
  HopfVerdict v;
  for (std::size_t c = 0; c < d.count(); ++c)
    if (d.hanging[c] == HangingKind::kForbiddenSingleton)
      v.obstructions.push_back({Obstruction::Kind::kForbiddenSingleton, d.components[c]});
  if (!v.obstructions.empty()) return v;
  v.outcome = HopfOutcome::kHopfian;
  if (d.count() == 1) {
    v.branch = HopfBranch::kSingleOdd;
  } else if (d.count() == 2) {
    bool needle = d.hanging[0] == HangingKind::kNeedle || d.hanging[1] == HangingKind::kNeedle;
    v.branch = needle ? HopfBranch::kTwoOddNeedle : HopfBranch::kTwoOddBroad;
  } else {
    v.branch = HopfBranch::kThreePlusOdd;
  }
  return v;
}

}  // namespace detail

/// Decision procedure for the Hopf theorem. HOPFIAN means the theorem (or
/// one of its reductions: free products, |vertices| <= 2) applies; UNKNOWN
/// means it does not, never that the group fails to be Hopfian.
inline HopfVerdict hopf_verdict(const LabelledGraph& g) {
  HopfVerdict v;
  for (const auto& e : g.edges())
    if (e.label < 3)
      v.obstructions.push_back({Obstruction::Kind::kNonLargeLabel, {std::min(e.u, e.v), std::max(e.u, e.v)}});
  for (const auto& t : triangles(g))
    if (!triangle_is_hyperbolic(g.label(t[0], t[1]), g.label(t[1], t[2]), g.label(t[0], t[2])))
      v.obstructions.push_back({Obstruction::Kind::kNonHyperbolicTriangle, {t[0], t[1], t[2]}});
  if (!v.obstructions.empty()) return v;

  auto comps = connected_components(g);
  if (comps.size() <= 1) return detail::connected_verdict(g);

  v.branch = HopfBranch::kFreeProduct;
  bool all = true;
  for (const auto& comp : comps) {
    auto sub = detail::connected_verdict(g.induced(comp));
    if (!sub.hopfian()) all = false;
    for (auto& o : sub.obstructions) {
      for (auto& x : o.vertices) x = comp[x];
      v.obstructions.push_back(std::move(o));
    }
  }
  if (all) {
    v.outcome = HopfOutcome::kHopfian;
  } else {
    v.branch = HopfBranch::kFailsHypotheses;
  }
  return v;
}

/// Large, hyperbolic type and every hanging component broad or a needle,
/// evaluated directly on the whole graph.
inline bool theorem_applicable(const LabelledGraph& g) {
  auto f = type_flags(g);
  if (!f.large || !f.hyperbolic) return false;
  auto d = odd_decomposition(g);
  return std::none_of(d.hanging.begin(), d.hanging.end(),
                      [](HangingKind k) { return k == HangingKind::kForbiddenSingleton; });
}

enum class KnownClass { kTriangleFree, kEven, kXXXL, kFreeOfInfinity, kSingleOddComponent };

inline const char* to_string(KnownClass k) {
  switch (k) {
    case KnownClass::kTriangleFree: return "triangle-free";
    case KnownClass::kEven: return "even";
    case KnownClass::kXXXL: return "xxxl";
    case KnownClass::kFreeOfInfinity: return "free-of-infinity";
    case KnownClass::kSingleOddComponent: return "single-odd-component";
  }
  return "?";
}

/// Informational membership flags for classes discussed in the literature
/// (residual finiteness, other Hopf results). Nothing here is decided.
inline std::vector<KnownClass> known_classes_report(const LabelledGraph& g) {
  std::vector<KnownClass> out;
  auto f = type_flags(g);
  if (triangles(g).empty()) out.push_back(KnownClass::kTriangleFree);
  if (f.even) out.push_back(KnownClass::kEven);
  if (f.xxxl) out.push_back(KnownClass::kXXXL);
  if (f.free_of_infinity) out.push_back(KnownClass::kFreeOfInfinity);
  if (odd_decomposition(g).count() == 1) out.push_back(KnownClass::kSingleOddComponent);
  return out;
}

/// Everything `classify` reports about one graph.
struct ClassificationReport {
  TypeFlags flags;
  OddDecomposition decomposition;
  VertexSet tips;
  HopfVerdict verdict;
  std::vector<KnownClass> known;
  std::size_t abelianization_rank = 0;
};

inline ClassificationReport classify(const LabelledGraph& g) {
  ClassificationReport r;
  r.flags = type_flags(g);
  r.decomposition = odd_decomposition(g);
  r.tips = even_leaf_tips(g);
  r.verdict = hopf_verdict(g);
  r.known = known_classes_report(g);
  r.abelianization_rank = r.decomposition.count();
  return r;
}

inline std::string vertex_set_text(const LabelledGraph& g, const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + g.name(s[i]);
  return out + "}";
}

inline std::string verdict_line(const LabelledGraph& g, const HopfVerdict& v) {
  if (v.hopfian()) return std::string("HOPFIAN (") + to_string(v.branch) + ")";
  std::string out = "UNKNOWN: ";
  for (std::size_t i = 0; i < v.obstructions.size(); ++i)
    out += (i ? "; " : "") + describe(g, v.obstructions[i]);
  return out;
}

inline std::string to_text(const LabelledGraph& g, const ClassificationReport& r) {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::string out;
  out += "vertices: " + std::to_string(g.size()) + ", edges: " + std::to_string(g.edges().size()) + "\n";
  out += std::string("large: ") + yn(r.flags.large) + "\n";
  out += std::string("hyperbolic: ") + yn(r.flags.hyperbolic) + "\n";
  out += std::string("even: ") + yn(r.flags.even) + "\n";
  out += std::string("extra-large: ") + yn(r.flags.extra_large) + "\n";
  out += std::string("xxxl: ") + yn(r.flags.xxxl) + "\n";
  out += std::string("free-of-infinity: ") + yn(r.flags.free_of_infinity) + "\n";
  out += std::string("connected: ") + yn(r.flags.connected) + "\n";
  out += "odd components: " + std::to_string(r.decomposition.count()) + "\n";
  for (std::size_t c = 0; c < r.decomposition.count(); ++c) {
    out += "  " + vertex_set_text(g, r.decomposition.components[c]) + " " +
           to_string(r.decomposition.hanging[c]) + "\n";
  }
  out += "even leaf tips: " + vertex_set_text(g, r.tips) + "\n";
  out += "abelianization rank: " + std::to_string(r.abelianization_rank) + "\n";
  out += "known classes:";
  if (r.known.empty()) out += " none";
  for (auto k : r.known) out += std::string(" ") + to_string(k);
  out += "\n";
  out += "verdict: " + verdict_line(g, r.verdict) + "\n";
  return out;
}

inline nlohmann::ordered_json to_json(const LabelledGraph& g, const ClassificationReport& r) {
  using J = nlohmann::ordered_json;
  auto names = [&](const VertexSet& s) {
    J arr = J::array();
    for (auto v : s) arr.push_back(g.name(v));
    return arr;
  };
  J j;
  j["flags"] = {{"large", r.flags.large},
                {"hyperbolic", r.flags.hyperbolic},
                {"even", r.flags.even},
                {"extra_large", r.flags.extra_large},
                {"xxxl", r.flags.xxxl},
                {"free_of_infinity", r.flags.free_of_infinity},
                {"connected", r.flags.connected}};
  J comps = J::array();
  for (std::size_t c = 0; c < r.decomposition.count(); ++c) {
    J oc = J::array();
    for (auto o : r.decomposition.oc_adjacency[c]) oc.push_back(o);
    comps.push_back({{"vertices", names(r.decomposition.components[c])},
                     {"hanging", to_string(r.decomposition.hanging[c])},
                     {"oc_neighbours", oc}});
  }
  j["odd_components"] = comps;
  j["even_leaf_tips"] = names(r.tips);
  j["abelianization_rank"] = r.abelianization_rank;
  J known = J::array();
  for (auto k : r.known) known.push_back(to_string(k));
  j["known_classes"] = known;
  J obs = J::array();
  for (const auto& o : r.verdict.obstructions)
    obs.push_back({{"kind", obstruction_tag(o.kind)}, {"vertices", names(o.vertices)}});
  j["verdict"] = {{"outcome", to_string(r.verdict.outcome)},
                  {"branch", to_string(r.verdict.branch)},
                  {"obstructions", obs}};
  return j;
}

}  // namespace artin
