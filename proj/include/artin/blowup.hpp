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

// Blowups of support graphs, simplices of X and their links, saturations,
// simplex classes and the nesting/orthogonality relation, X-graphs and
// augmented graphs.

#include "artin/common.hpp"
#include "artin/simple_graph.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace artin {

/// The blowup X of a support graph: vertex v is replaced by the star
/// v * L_v, and the stars of adjacent support vertices span joins.
///
/// X numbers support vertices first (in support order), then the leaves of
/// each support vertex in turn.
class BlowupComplex {
 public:
  BlowupComplex() = default;

  /// `leaves[v]` names the leaves of support vertex v. All names in X must
  /// be distinct. Throws InvalidArgument otherwise.
  BlowupComplex(SimpleGraph support, std::vector<std::vector<std::string>> leaves)
      : support_(std::move(support)) {
    const std::size_t n = support_.size();
    if (leaves.size() != n) throw InvalidArgument("leaf table size differs from support size");
    std::vector<std::string> names = support_.names();
    p_.resize(n);
    leaves_.resize(n);
    for (std::size_t v = 0; v < n; ++v) p_[v] = v;
    for (std::size_t v = 0; v < n; ++v) {
      for (auto& leaf : leaves[v]) {
        leaves_[v].push_back(names.size());
        names.push_back(std::move(leaf));
        p_.push_back(v);
      }
    }
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end())
      throw InvalidArgument("duplicate vertex name '" + *dup + "' in blowup");

    x_ = SimpleGraph(std::move(names));
    for (std::size_t v = 0; v < n; ++v)
      for (auto leaf : leaves_[v]) x_.add_edge(v, leaf);
    for (auto [v, w] : support_.edges()) {
      auto sv = squid(v);
      auto sw = squid(w);
      for (auto a = sv.find_first(); a != VertexMask::npos; a = sv.find_next(a))
        for (auto b = sw.find_first(); b != VertexMask::npos; b = sw.find_next(b))
          x_.add_edge(a, b);
    }
  }

  const SimpleGraph& support() const noexcept { return support_; }
  const SimpleGraph& graph() const noexcept { return x_; }
  std::size_t size() const noexcept { return x_.size(); }
  std::size_t support_size() const noexcept { return support_.size(); }
  bool is_support(std::size_t x) const noexcept { return x < support_.size(); }
  const std::string& name(std::size_t x) const { return x_.name(x); }

  /// The retraction p: identity on support vertices, leaves to their tip.
  std::size_t retract(std::size_t x) const { return p_.at(x); }

  /// X indices of the leaves of support vertex v.
  const std::vector<std::size_t>& leaves(std::size_t v) const { return leaves_.at(v); }

  VertexMask squid(std::size_t v) const {
    VertexMask m(size());
    m.set(v);
    for (auto leaf : leaves_[v]) m.set(leaf);
    return m;
  }

  VertexMask leaf_mask(std::size_t v) const {
    VertexMask m(size());
    for (auto leaf : leaves_[v]) m.set(leaf);
    return m;
  }

  /// p^{-1} of a set of support vertices.
  VertexMask preimage(const VertexMask& support_set) const {
    VertexMask m(size());
    for (auto v = support_set.find_first(); v != VertexMask::npos; v = support_set.find_next(v))
      m |= squid(v);
    return m;
  }

  /// p of a set of X vertices, as a support mask.
  VertexMask image(const VertexMask& x_set) const {
    VertexMask m(support_size());
    for (auto x = x_set.find_first(); x != VertexMask::npos; x = x_set.find_next(x))
      m.set(p_[x]);
    return m;
  }

  VertexMask empty_mask() const { return VertexMask(size()); }

  /// Mask of the named X vertices. Throws InvalidArgument on unknown names.
  VertexMask mask(const std::vector<std::string>& names) const {
    VertexMask m(size());
    for (const auto& s : names) {
      auto idx = x_.find(s);
      if (!idx) throw InvalidArgument("unknown vertex '" + s + "'");
      m.set(*idx);
    }
    return m;
  }

 private:
  SimpleGraph support_;
  SimpleGraph x_;
  std::vector<std::size_t> p_;
  std::vector<std::vector<std::size_t>> leaves_;
};

/// Bracket notation: vertices of one squid share parentheses, support
/// vertex first, e.g. {(v,x),(w)}.
inline std::string simplex_text(const BlowupComplex& X, const VertexMask& s) {
  std::string out = "{";
  bool first_group = true;
  for (std::size_t v = 0; v < X.support_size(); ++v) {
    auto part = s & X.squid(v);
    if (part.none()) continue;
    out += first_group ? "(" : ",(";
    first_group = false;
    bool first = true;
    for (auto x = part.find_first(); x != VertexMask::npos; x = part.find_next(x)) {
      out += (first ? "" : ",") + X.name(x);
      first = false;
    }
    out += ")";
  }
  return out + "}";
}

inline std::string vertex_set_text(const SimpleGraph& g, const VertexMask& s) {
  std::string out = "{";
  bool first = true;
  for (auto x = s.find_first(); x != VertexMask::npos; x = s.find_next(x)) {
    out += (first ? "" : ",") + g.name(x);
    first = false;
  }
  return out + "}";
}

/// Parses a simplex literal `(v:x,w:y)`: comma-separated parts, each `a:b`
/// or `a`, naming vertices of X. Blanks are allowed. Throws InvalidArgument.
inline VertexMask parse_simplex_literal(const BlowupComplex& X, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw InvalidArgument("simplex literal must be parenthesised: '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  std::vector<std::string> names;
  std::size_t start = 0;
  for (;;) {
    auto end = text.find_first_of(",:", start);
    auto item = trim(text.substr(start, end == std::string_view::npos ? text.npos : end - start));
    if (item.empty()) throw InvalidArgument("empty name in simplex literal");
    names.emplace_back(item);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return X.mask(names);
}

/// True iff `s` spans a clique.
inline bool is_simplex(const SimpleGraph& g, const VertexMask& s) {
  for (auto a = s.find_first(); a != VertexMask::npos; a = s.find_next(a)) {
    auto rest = s;
    rest.reset(a);
    if (!rest.is_subset_of(g.neighbours(a))) return false;
  }
  return true;
}

/// Common neighbours of every vertex of `s`, outside `s`. The link of the
/// empty set is the whole graph. Applies to arbitrary vertex sets, which is
/// how Lk(Lk(D)) is evaluated.
inline VertexMask set_link(const SimpleGraph& g, const VertexMask& s) {
  VertexMask out = g.all();
  for (auto a = s.find_first(); a != VertexMask::npos; a = s.find_next(a)) out &= g.neighbours(a);
  return out - s;
}

/// Link of a simplex. Throws InvalidArgument if `delta` is not a clique.
inline VertexMask simplex_link(const SimpleGraph& g, const VertexMask& delta) {
  if (!is_simplex(g, delta)) throw InvalidArgument("vertex set is not a simplex");
  return set_link(g, delta);
}

inline VertexMask simplex_link(const BlowupComplex& X, const VertexMask& delta) {
  return simplex_link(X.graph(), delta);
}

/// All simplices including the empty one, in lexicographic order.
inline std::vector<VertexMask> enumerate_simplices(const SimpleGraph& g) {
  std::vector<VertexMask> out;
  const std::size_t n = g.size();
  // Depth-first extension by larger indices visits cliques in lex order.
  auto rec = [&](auto&& self, VertexMask& clique, const VertexMask& candidates) -> void {
    out.push_back(clique);
    for (auto v = candidates.find_first(); v != VertexMask::npos; v = candidates.find_next(v)) {
      VertexMask next = candidates & g.neighbours(v);
      for (std::size_t u = 0; u <= v; ++u) next.reset(u);
      clique.set(v);
      self(self, clique, next);
      clique.reset(v);
    }
  };
  VertexMask clique(n);
  rec(rec, clique, g.all());
  return out;
}

inline std::vector<VertexMask> maximal_simplices(const SimpleGraph& g) {
  std::vector<VertexMask> out;
  for (auto& s : enumerate_simplices(g))
    if (set_link(g, s).none()) out.push_back(std::move(s));
  return out;
}

/// Every simplex paired with its link.
struct SimplexTable {
  std::vector<VertexMask> simplices;
  std::vector<VertexMask> links;

  bool maximal(std::size_t i) const { return links[i].none(); }
};

inline SimplexTable simplex_table(const SimpleGraph& g) {
  SimplexTable t;
  t.simplices = enumerate_simplices(g);
  t.links.reserve(t.simplices.size());
  for (const auto& s : t.simplices) t.links.push_back(set_link(g, s));
  return t;
}

/// Union of all simplices with the same link as `delta`.
inline VertexMask saturation(const SimpleGraph& g, const VertexMask& delta) {
  auto lk = simplex_link(g, delta);
  VertexMask sat(g.size());
  for (const auto& s : enumerate_simplices(g))
    if (set_link(g, s) == lk) sat |= s;
  return sat;
}

inline VertexMask saturation(const BlowupComplex& X, const VertexMask& delta) {
  return saturation(X.graph(), delta);
}

/// An equivalence class of non-maximal simplices (equal links).
struct SimplexClass {
  VertexMask representative;  // lexicographically least member
  VertexMask link;
  VertexMask saturation;
  std::size_t members = 0;
};

/// Classes of non-maximal simplices, ordered by representative.
inline std::vector<SimplexClass> simplex_classes(const SimplexTable& t) {
  std::vector<SimplexClass> out;
  std::map<std::vector<std::size_t>, std::size_t> by_link;
  for (std::size_t i = 0; i < t.simplices.size(); ++i) {
    if (t.maximal(i)) continue;
    auto key = mask_to_indices(t.links[i]);
    auto [it, inserted] = by_link.try_emplace(key, out.size());
    if (inserted) {
      out.push_back({t.simplices[i], t.links[i], t.simplices[i], 1});
    } else {
      auto& c = out[it->second];
      c.saturation |= t.simplices[i];
      ++c.members;
    }
  }
  // Simplices arrive in lex order, so first member is the representative
  // and `out` is already sorted by representative.
  return out;
}

inline std::vector<SimplexClass> simplex_classes(const SimpleGraph& g) {
  return simplex_classes(simplex_table(g));
}

inline std::vector<SimplexClass> simplex_classes(const BlowupComplex& X) {
  return simplex_classes(X.graph());
}

enum class LinkTag { kEmpty, kEdgeType, kTriangleType, kMaximal, kBounded };

inline const char* to_string(LinkTag t) {
  switch (t) {
    case LinkTag::kEmpty: return "empty";
    case LinkTag::kEdgeType: return "edge-type";
    case LinkTag::kTriangleType: return "triangle-type";
    case LinkTag::kMaximal: return "maximal";
    case LinkTag::kBounded: return "bounded";
  }
  return "?";
}

struct LinkCase {
  LinkTag tag = LinkTag::kBounded;
  VertexMask link;
  /// Link predicted by the case's formula; absent for kBounded.
  std::optional<VertexMask> predicted;
  /// Diameter of the link in X (nullopt when disconnected); set for kBounded.
  std::optional<int> diameter;
  /// The link is a single vertex or a non-trivial join; set for kBounded.
  bool vertex_or_join = false;

  /// The case's assertion holds for this simplex.
  bool holds() const {
    if (tag != LinkTag::kBounded) return predicted && *predicted == link;
    return vertex_or_join && diameter && *diameter <= 2;
  }
};

/// True iff `s` induces a single vertex or splits as A * B with A, B
/// non-empty and fully joined.
inline bool is_vertex_or_join(const SimpleGraph& g, const VertexMask& s) {
  auto count = s.count();
  if (count == 1) return true;
  if (count < 2) return false;
  // A non-trivial join is exactly a disconnected complement.
  SimpleGraph complement(g.size());
  auto idx = mask_to_indices(s);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (!g.adjacent(idx[a], idx[b])) complement.add_edge(idx[a], idx[b]);
  return components(complement, s).size() >= 2;
}

inline void require_bounded_links_hypotheses(const BlowupComplex& X) {
  const auto& sup = X.support();
  for (std::size_t v = 0; v < sup.size(); ++v) {
    if (sup.degree(v) == 0)
      throw HypothesisError("support vertex '" + sup.name(v) + "' is an isolated point");
    if (X.leaves(v).empty())
      throw HypothesisError("support vertex '" + sup.name(v) + "' has no leaves");
  }
  for (auto [u, v] : sup.edges()) {
    auto common = sup.neighbours(u) & sup.neighbours(v);
    if (common.any()) throw HypothesisError("support graph has a triangle");
  }
}

/// Sorts a simplex into the five link cases by its shape and computes the
/// data needed to confirm the case. Requires a triangle-free support with no
/// isolated vertices and non-empty leaf sets (HypothesisError otherwise).
inline LinkCase classify_simplex_link(const BlowupComplex& X, const VertexMask& delta) {
  require_bounded_links_hypotheses(X);
  const auto& g = X.graph();
  LinkCase c;
  c.link = simplex_link(g, delta);
  if (delta.none()) {
    c.tag = LinkTag::kEmpty;
    c.predicted = g.all();
    return c;
  }
  if (c.link.none()) {
    c.tag = LinkTag::kMaximal;
    c.predicted = VertexMask(g.size());
    return c;
  }
  auto support = X.image(delta);
  auto sv = mask_to_indices(support);
  auto has_leaf = [&](std::size_t v) { return (delta & X.leaf_mask(v)).any(); };
  auto has_tip = [&](std::size_t v) { return delta.test(v); };

  if (sv.size() == 1 && delta.count() == 2 && has_tip(sv[0]) && has_leaf(sv[0])) {
    c.tag = LinkTag::kEdgeType;
    c.predicted = X.preimage(X.support().neighbours(sv[0]));
    return c;
  }
  if (sv.size() == 2 && delta.count() == 3) {
    for (int flip = 0; flip < 2; ++flip) {
      auto v = sv[flip];
      auto w = sv[1 - flip];
      if (has_tip(v) && has_leaf(v) && has_tip(w) && !has_leaf(w)) {
        c.tag = LinkTag::kTriangleType;
        c.predicted = X.leaf_mask(w);
        return c;
      }
    }
  }
  c.tag = LinkTag::kBounded;
  c.diameter = diameter(g, c.link);
  c.vertex_or_join = is_vertex_or_join(g, c.link);
  return c;
}

enum class Relation { kEqual, kNested, kContains, kOrthogonal, kTransverse };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::kEqual: return "EQUAL";
    case Relation::kNested: return "NESTED";
    case Relation::kContains: return "CONTAINS";
    case Relation::kOrthogonal: return "ORTHOGONAL";
    case Relation::kTransverse: return "TRANSVERSE";
  }
  return "?";
}

/// Relation between the classes of two non-maximal simplices, read off
/// their links. kNested means Lk(d1) is a proper subset of Lk(d2);
/// kContains is the reverse. Throws InvalidArgument for maximal simplices
/// or non-cliques.
inline Relation relation(const SimpleGraph& g, const VertexMask& d1, const VertexMask& d2) {
  auto l1 = simplex_link(g, d1);
  auto l2 = simplex_link(g, d2);
  if (l1.none() || l2.none()) throw InvalidArgument("relation is defined for non-maximal simplices only");
  if (l1 == l2) return Relation::kEqual;
  if (l1.is_subset_of(l2)) return Relation::kNested;
  if (l2.is_subset_of(l1)) return Relation::kContains;
  if (l2.is_subset_of(set_link(g, l1))) return Relation::kOrthogonal;
  return Relation::kTransverse;
}

inline Relation relation(const BlowupComplex& X, const VertexMask& d1, const VertexMask& d2) {
  return relation(X.graph(), d1, d2);
}

/// Edge-type simplex {(v,x)} with x the first leaf of v; nullopt if L_v is
/// empty. Its class is U_v.
inline std::optional<VertexMask> u_simplex(const BlowupComplex& X, std::size_t v) {
  if (X.leaves(v).empty()) return std::nullopt;
  auto m = X.empty_mask();
  m.set(v);
  m.set(X.leaves(v).front());
  return m;
}

/// Triangle-type simplex {(w,y),(v)} whose link is L_v, using the first
/// support neighbour w of v with a leaf y. Its class is l_v. nullopt when L_v
/// is empty or no neighbour has leaves.
inline std::optional<VertexMask> ell_simplex(const BlowupComplex& X, std::size_t v) {
  if (X.leaves(v).empty()) return std::nullopt;
  const auto& nb = X.support().neighbours(v);
  for (auto w = nb.find_first(); w != VertexMask::npos; w = nb.find_next(w)) {
    if (X.leaves(w).empty()) continue;
    auto m = X.empty_mask();
    m.set(v);
    m.set(w);
    m.set(X.leaves(w).front());
    return m;
  }
  return std::nullopt;
}

/// A graph whose vertices are the maximal simplices of X.
class XGraph {
 public:
  explicit XGraph(const SimpleGraph& x) : maximal_(maximal_simplices(x)), graph_(maximal_.size()) {}

  const std::vector<VertexMask>& maximal() const noexcept { return maximal_; }
  const SimpleGraph& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return maximal_.size(); }

  /// Index of a maximal simplex; InvalidArgument if `s` is not one.
  std::size_t index(const VertexMask& s) const {
    for (std::size_t i = 0; i < maximal_.size(); ++i)
      if (maximal_[i] == s) return i;
    throw InvalidArgument("W vertex is not a maximal simplex of X");
  }

  void add_edge(const VertexMask& a, const VertexMask& b) {
    auto i = index(a);
    auto j = index(b);
    if (i == j) throw InvalidArgument("W edge joins a maximal simplex to itself");
    graph_.add_edge(i, j);
  }

  void add_edge(std::size_t i, std::size_t j) { graph_.add_edge(i, j); }

  bool adjacent(std::size_t i, std::size_t j) const { return graph_.adjacent(i, j); }

  static XGraph complete(const SimpleGraph& x) {
    XGraph w(x);
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j) w.graph_.add_edge(i, j);
    return w;
  }

 private:
  std::vector<VertexMask> maximal_;
  SimpleGraph graph_;
};

/// X plus an edge between each vertex of s and each vertex of r for every
/// W-adjacent pair of maximal simplices s, r.
inline SimpleGraph augmented_graph(const SimpleGraph& x, const XGraph& w) {
  SimpleGraph out = x;
  for (auto [i, j] : w.graph().edges()) {
    const auto& s = w.maximal()[i];
    const auto& r = w.maximal()[j];
    for (auto a = s.find_first(); a != VertexMask::npos; a = s.find_next(a))
      for (auto b = r.find_first(); b != VertexMask::npos; b = r.find_next(b))
        if (a != b) out.add_edge(a, b);
  }
  return out;
}

/// The support graph plus an edge v--w whenever v, w are support vertices
/// of W-adjacent maximal simplices.
inline SimpleGraph augmented_support(const BlowupComplex& X, const XGraph& w) {
  SimpleGraph out = X.support();
  const auto n = X.support_size();
  for (auto [i, j] : w.graph().edges()) {
    const auto& s = w.maximal()[i];
    const auto& r = w.maximal()[j];
    for (std::size_t a = 0; a < n; ++a) {
      if (!s.test(a)) continue;
      for (std::size_t b = 0; b < n; ++b)
        if (r.test(b) && a != b) out.add_edge(a, b);
    }
  }
  return out;
}

/// A longest chain Lk(D_1) < ... < Lk(D_k) of strictly nested links over all
/// simplices (including the empty and maximal ones).
struct LinkChain {
  std::size_t length = 0;
  std::vector<VertexMask> simplices;  // one witness simplex per link, innermost first
};

inline LinkChain longest_link_chain(const SimplexTable& t) {
  // Distinct links with a witness simplex each.
  std::vector<VertexMask> links;
  std::vector<VertexMask> witness;
  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (std::size_t i = 0; i < t.simplices.size(); ++i) {
    if (seen.try_emplace(mask_to_indices(t.links[i]), links.size()).second) {
      links.push_back(t.links[i]);
      witness.push_back(t.simplices[i]);
    }
  }
  // Longest path in the strict-inclusion order, processing by size.
  std::vector<std::size_t> order(links.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return links[a].count() < links[b].count(); });
  std::vector<std::size_t> best(links.size(), 1);
  std::vector<std::size_t> prev(links.size(), links.size());
  for (std::size_t a = 0; a < order.size(); ++a) {
    auto i = order[a];
    for (std::size_t b = 0; b < a; ++b) {
      auto j = order[b];
      if (links[j].count() < links[i].count() && links[j].is_subset_of(links[i]) &&
          best[j] + 1 > best[i]) {
        best[i] = best[j] + 1;
        prev[i] = j;
      }
    }
  }
  LinkChain chain;
  if (links.empty()) return chain;
  std::size_t top = 0;
  for (std::size_t i = 0; i < links.size(); ++i)
    if (best[i] > best[top]) top = i;
  chain.length = best[top];
  for (auto i = top; i != links.size(); i = prev[i]) chain.simplices.push_back(witness[i]);
  std::reverse(chain.simplices.begin(), chain.simplices.end());
  return chain;
}

inline LinkChain longest_link_chain(const SimpleGraph& g) {
  return longest_link_chain(simplex_table(g));
}

}  // namespace artin
