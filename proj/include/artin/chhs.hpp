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

// Exhaustive checks of the combinatorial HHS axioms on finite (X, W) and
// the blowup/W text format.

#include "artin/blowup.hpp"
#include "artin/common.hpp"
#include "artin/hyperbolicity.hpp"
#include "artin/simple_graph.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace artin {

/// A blowup and an X-graph read from text.
struct BlowupInput {
  BlowupComplex X;
  XGraph W;
};

/// Grammar: `vertex <id>`, `edge <id> <id> [label]` (label ignored),
/// `leaf <support-vertex> <leaf-id>`, `wedge <simplex> <simplex>` where a
/// simplex literal is `(v:x,w:y)`. Throws ParseError.
inline BlowupInput parse_blowup(std::string_view text) {
  auto lines = detail::tokenize_lines(text);
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::string>> leaves;
  std::vector<const detail::Line*> wedges;
  auto find = [&](const detail::Line& line, const detail::Token& tok) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == tok.text) return i;
    throw ParseError(line.number, tok.column, "undeclared support vertex '" + tok.text + "'");
  };
  for (const auto& line : lines) {
    const auto& head = line.tokens[0];
    const auto argc = line.tokens.size() - 1;
    if (head.text == "vertex") {
      if (argc != 1) throw ParseError(line.number, head.column, "expected 'vertex <id>'");
      const auto& tok = line.tokens[1];
      for (const auto& n : names)
        if (n == tok.text) throw ParseError(line.number, tok.column, "duplicate vertex '" + tok.text + "'");
      names.push_back(tok.text);
      leaves.emplace_back();
    } else if (head.text == "edge") {
      if (argc != 2 && argc != 3)
        throw ParseError(line.number, head.column, "expected 'edge <id> <id> [label]'");
      auto u = find(line, line.tokens[1]);
      auto v = find(line, line.tokens[2]);
      if (u == v) throw ParseError(line.number, line.tokens[2].column, "self-loop");
      if (argc == 3) detail::parse_int_token(line, line.tokens[3], "edge label");
      for (auto [a, b] : edges)
        if ((a == u && b == v) || (a == v && b == u))
          throw ParseError(line.number, head.column, "duplicate edge");
      edges.emplace_back(u, v);
    } else if (head.text == "leaf") {
      if (argc != 2) throw ParseError(line.number, head.column, "expected 'leaf <vertex> <id>'");
      leaves[find(line, line.tokens[1])].push_back(line.tokens[2].text);
    } else if (head.text == "wedge") {
      if (argc != 2) throw ParseError(line.number, head.column, "expected 'wedge <simplex> <simplex>'");
      wedges.push_back(&line);
    } else {
      throw ParseError(line.number, head.column, "unknown directive '" + head.text + "'");
    }
  }
  SimpleGraph support(names);
  for (auto [u, v] : edges) support.add_edge(u, v);
  BlowupComplex X;
  try {
    X = BlowupComplex(std::move(support), std::move(leaves));
  } catch (const InvalidArgument& e) {
    throw ParseError(1, 1, e.what());
  }
  XGraph W(X.graph());
  for (const auto* line : wedges) {
    try {
      auto a = parse_simplex_literal(X, line->tokens[1].text);
      auto b = parse_simplex_literal(X, line->tokens[2].text);
      W.add_edge(a, b);
    } catch (const InvalidArgument& e) {
      throw ParseError(line->number, line->tokens[1].column, e.what());
    }
  }
  return {std::move(X), std::move(W)};
}

/// Finite-scale data for one simplex class under axiom (2).
struct ClassHyperbolicity {
  VertexMask representative;
  bool connected = true;
  Rational delta;  // four-point constant of C(D), per component
  /// Largest d_C / d_Y and d_C - d_Y over pairs in one component of C(D);
  /// Y is X^{+W} minus Sat(D). Reported, not judged.
  Rational multiplicative{1};
  int additive = 0;
};

struct ChhsReport {
  Rational delta;
  std::size_t complexity = 0;
  std::size_t simplices = 0;
  std::size_t maximal = 0;
  std::size_t classes = 0;

  // (1) chain condition
  LinkChain chain;
  bool chain_ok = true;

  // (2) hyperbolic augmented links
  std::vector<ClassHyperbolicity> links;
  bool hyperbolicity_ok = true;
  std::optional<VertexMask> hyperbolicity_witness;

  // (3) containers
  bool containers_ok = true;
  std::optional<std::pair<VertexMask, VertexMask>> container_witness;  // (D, Sigma)
  std::size_t container_instances = 0;

  // (4) fullness of links
  struct FullnessWitness {
    VertexMask delta;
    std::size_t v;
    std::size_t w;
  };
  bool fullness_ok = true;
  std::optional<FullnessWitness> fullness_witness;
  std::size_t fullness_instances = 0;

  bool passed() const { return chain_ok && hyperbolicity_ok && containers_ok && fullness_ok; }
};

namespace detail {

inline ClassHyperbolicity class_hyperbolicity(const SimpleGraph& aug, const SimplexClass& c,
                                              unsigned jobs) {
  ClassHyperbolicity h;
  h.representative = c.representative;
  h.connected = components(aug, c.link).size() <= 1;
  h.delta = hyperbolicity_delta(aug, c.link, jobs);
  auto y_set = aug.all() - c.saturation;
  auto dc = all_pairs_distances(aug, c.link);
  auto idx = mask_to_indices(c.link);
  for (auto a : idx) {
    auto dy = bfs_distances(aug, a, y_set);
    for (auto b : idx) {
      if (b <= a || dc[a][b] == kUnreachable) continue;
      Rational ratio(dc[a][b], dy[b]);
      if (ratio > h.multiplicative) h.multiplicative = ratio;
      h.additive = std::max(h.additive, dc[a][b] - dy[b]);
    }
  }
  return h;
}

}  // namespace detail

/// Checks axioms (1)-(4) exhaustively. `complexity` bounds chain length in
/// (1); `delta` bounds the four-point constant in (2) and is the diameter
/// threshold in (3). The quasi-isometric embedding half of (2) is reported
/// through distortion figures only.
inline ChhsReport chhs_check(const SimpleGraph& x, const XGraph& w, const Rational& delta,
                             std::size_t complexity, unsigned jobs = 1) {
  if (w.maximal() != maximal_simplices(x)) throw InvalidArgument("W is not an X-graph for this X");
  ChhsReport r;
  r.delta = delta;
  r.complexity = complexity;
  auto table = simplex_table(x);
  auto classes = simplex_classes(table);
  auto aug = augmented_graph(x, w);
  r.simplices = table.simplices.size();
  r.maximal = w.size();
  r.classes = classes.size();

  r.chain = longest_link_chain(table);
  r.chain_ok = r.chain.length <= complexity;

  std::vector<bool> wide(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto h = detail::class_hyperbolicity(aug, classes[i], jobs);
    if ((!h.connected || h.delta > delta) && r.hyperbolicity_ok) {
      r.hyperbolicity_ok = false;
      r.hyperbolicity_witness = h.representative;
    }
    r.links.push_back(std::move(h));
    auto diam = diameter(aug, classes[i].link);
    wide[i] = !diam || Rational(*diam) >= delta;
  }

  // (3): for each class D and non-maximal simplex Sigma, gather the wide
  // classes G below Lk(D) and Lk(Sigma) and look for a container Pi > Sigma.
  for (std::size_t d = 0; d < classes.size() && r.containers_ok; ++d) {
    const auto& lk_d = classes[d].link;
    for (std::size_t s = 0; s < table.simplices.size() && r.containers_ok; ++s) {
      if (table.maximal(s)) continue;
      auto meet = lk_d & table.links[s];
      VertexMask needed(x.size());
      bool any = false;
      for (std::size_t g = 0; g < classes.size(); ++g) {
        if (wide[g] && classes[g].link.is_subset_of(meet)) {
          needed |= classes[g].link;
          any = true;
        }
      }
      if (!any) continue;
      ++r.container_instances;
      bool found = false;
      for (std::size_t p = 0; p < table.simplices.size() && !found; ++p) {
        if (!table.simplices[s].is_subset_of(table.simplices[p])) continue;
        found = needed.is_subset_of(table.links[p]) && table.links[p].is_subset_of(lk_d);
      }
      if (!found) {
        r.containers_ok = false;
        r.container_witness = std::make_pair(classes[d].representative, table.simplices[s]);
      }
    }
  }

  // (4): pairs (v, w) covered by some W edge, then the same pair covered by a
  // W edge whose ends both contain D.
  const std::size_t n = x.size();
  std::vector<VertexMask> covered(n, VertexMask(n));
  auto w_edges = w.graph().edges();
  for (auto [i, j] : w_edges) {
    const auto& s = w.maximal()[i];
    const auto& t = w.maximal()[j];
    for (auto a = s.find_first(); a != VertexMask::npos; a = s.find_next(a))
      for (auto b = t.find_first(); b != VertexMask::npos; b = t.find_next(b)) {
        covered[a].set(b);
        covered[b].set(a);
      }
  }
  for (std::size_t s = 0; s < table.simplices.size() && r.fullness_ok; ++s) {
    const auto& dlt = table.simplices[s];
    const auto& lk = table.links[s];
    std::vector<VertexMask> local(n, VertexMask(n));
    for (auto [i, j] : w_edges) {
      const auto& a = w.maximal()[i];
      const auto& b = w.maximal()[j];
      if (!dlt.is_subset_of(a) || !dlt.is_subset_of(b)) continue;
      auto ra = a - dlt;
      auto rb = b - dlt;
      for (auto p = ra.find_first(); p != VertexMask::npos; p = ra.find_next(p)) local[p] |= rb;
      for (auto p = rb.find_first(); p != VertexMask::npos; p = rb.find_next(p)) local[p] |= ra;
    }
    for (auto v = lk.find_first(); v != VertexMask::npos && r.fullness_ok; v = lk.find_next(v)) {
      for (auto u = lk.find_next(v); u != VertexMask::npos; u = lk.find_next(u)) {
        if (x.adjacent(v, u) || !covered[v].test(u)) continue;
        ++r.fullness_instances;
        if (!local[v].test(u)) {
          r.fullness_ok = false;
          r.fullness_witness = ChhsReport::FullnessWitness{dlt, v, u};
          break;
        }
      }
    }
  }
  return r;
}

inline std::string to_text(const SimpleGraph& x, const ChhsReport& r) {
  auto set = [&](const VertexMask& m) { return vertex_set_text(x, m); };
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  std::string out;
  out += "simplices: " + std::to_string(r.simplices) + ", maximal: " + std::to_string(r.maximal) +
         ", classes: " + std::to_string(r.classes) + "\n";
  out += std::string("axiom 1 (chains <= ") + std::to_string(r.complexity) + "): " +
         verdict(r.chain_ok) + ", longest chain " + std::to_string(r.chain.length) + "\n";
  out += std::string("axiom 2 (delta <= ") + to_string(r.delta) + "): " + verdict(r.hyperbolicity_ok);
  if (r.hyperbolicity_witness) out += ", witness " + set(*r.hyperbolicity_witness);
  out += "\n";
  for (const auto& h : r.links) {
    out += "  " + set(h.representative) + ": delta " + to_string(h.delta) +
           (h.connected ? "" : " (disconnected)") + ", distortion x" + to_string(h.multiplicative) +
           " +" + std::to_string(h.additive) + "\n";
  }
  out += std::string("axiom 3 (containers): ") + verdict(r.containers_ok) + ", " +
         std::to_string(r.container_instances) + " instances";
  if (r.container_witness)
    out += ", witness D=" + set(r.container_witness->first) + " S=" + set(r.container_witness->second);
  out += "\n";
  out += std::string("axiom 4 (fullness): ") + verdict(r.fullness_ok) + ", " +
         std::to_string(r.fullness_instances) + " instances";
  if (r.fullness_witness)
    out += ", witness D=" + set(r.fullness_witness->delta) + " v=" + x.name(r.fullness_witness->v) +
           " w=" + x.name(r.fullness_witness->w);
  out += "\n";
  out += "note: quasi-isometric embedding is reported as finite-scale distortion only\n";
  return out;
}

inline nlohmann::ordered_json to_json(const SimpleGraph& x, const ChhsReport& r) {
  using J = nlohmann::ordered_json;
  auto set = [&](const VertexMask& m) {
    J a = J::array();
    for (auto i : mask_to_indices(m)) a.push_back(x.name(i));
    return a;
  };
  J j;
  j["simplices"] = r.simplices;
  j["maximal_simplices"] = r.maximal;
  j["classes"] = r.classes;
  J chain = J::array();
  for (const auto& s : r.chain.simplices) chain.push_back(set(s));
  j["axiom1"] = {{"pass", r.chain_ok}, {"bound", r.complexity}, {"longest_chain", r.chain.length},
                 {"chain", chain}};
  J links = J::array();
  for (const auto& h : r.links)
    links.push_back({{"class", set(h.representative)},
                     {"connected", h.connected},
                     {"delta", to_string(h.delta)},
                     {"multiplicative", to_string(h.multiplicative)},
                     {"additive", h.additive}});
  j["axiom2"] = {{"pass", r.hyperbolicity_ok},
                 {"delta", to_string(r.delta)},
                 {"witness", r.hyperbolicity_witness ? set(*r.hyperbolicity_witness) : J()},
                 {"links", links}};
  J cw;
  if (r.container_witness)
    cw = {{"delta", set(r.container_witness->first)}, {"sigma", set(r.container_witness->second)}};
  j["axiom3"] = {{"pass", r.containers_ok}, {"instances", r.container_instances}, {"witness", cw}};
  J fw;
  if (r.fullness_witness)
    fw = {{"delta", set(r.fullness_witness->delta)},
          {"v", x.name(r.fullness_witness->v)},
          {"w", x.name(r.fullness_witness->w)}};
  j["axiom4"] = {{"pass", r.fullness_ok}, {"instances", r.fullness_instances}, {"witness", fw}};
  j["pass"] = r.passed();
  return j;
}

}  // namespace artin
