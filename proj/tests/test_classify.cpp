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

#include "artin/classify.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace artin;

namespace {

LabelledGraph graph(std::initializer_list<const char*> vertices,
                    std::initializer_list<std::tuple<const char*, const char*, int>> edges) {
  GraphBuilder b;
  for (auto v : vertices) b.add_vertex(v);
  for (auto [u, v, m] : edges) b.add_edge(u, v, m);
  return b.build();
}

const LabelledGraph gamma1 = graph({"a", "b", "c"}, {{"a", "b", 3}, {"b", "c", 4}, {"a", "c", 5}});
const LabelledGraph gamma2 = graph({"a", "b", "c"}, {{"a", "b", 4}, {"b", "c", 3}});
const LabelledGraph gamma4 = graph({"a", "b", "g"}, {{"a", "b", 3}, {"a", "g", 4}, {"b", "g", 4}});

// Odd core {a,b,c}; {d,e} broad, {f} a needle, {g} a forbidden singleton.
LabelledGraph hanging_example(bool with_g) {
  GraphBuilder b;
  for (auto v : {"a", "b", "c", "d", "e", "f"}) b.add_vertex(v);
  b.add_edge("a", "b", 3).add_edge("b", "c", 5).add_edge("a", "c", 7);
  b.add_edge("d", "e", 3).add_edge("d", "a", 4).add_edge("f", "b", 4);
  if (with_g) {
    b.add_vertex("g");
    b.add_edge("g", "a", 4).add_edge("g", "b", 4);
  }
  return b.build();
}

LabelledGraph relabel(const LabelledGraph& g, const std::vector<std::size_t>& perm) {
  // Vertex v of g becomes vertex perm[v] of the result.
  std::vector<std::string> names(g.size());
  for (Vertex v = 0; v < g.size(); ++v) names[perm[v]] = g.name(v);
  GraphBuilder b;
  for (const auto& n : names) b.add_vertex(n);
  for (const auto& e : g.edges()) b.add_edge(perm[e.u], perm[e.v], e.label);
  return b.build();
}

}  // namespace

TEST_CASE("type flags") {
  auto t333 = graph({"a", "b", "c"}, {{"a", "b", 3}, {"b", "c", 3}, {"a", "c", 3}});
  auto f = type_flags(t333);
  CHECK(f.large);
  CHECK_FALSE(f.hyperbolic);

  auto t334 = graph({"a", "b", "c"}, {{"a", "b", 3}, {"b", "c", 3}, {"a", "c", 4}});
  CHECK(type_flags(t334).hyperbolic);
  CHECK(Rational(1, 3) + Rational(1, 3) + Rational(1, 4) == Rational(11, 12));

  auto path = graph({"a", "b", "c"}, {{"a", "b", 4}, {"b", "c", 6}});
  auto p = type_flags(path);
  CHECK(p.hyperbolic);
  CHECK(p.even);
  CHECK(p.extra_large);
  CHECK_FALSE(p.xxxl);
  CHECK_FALSE(p.free_of_infinity);

  auto t246 = graph({"a", "b", "c"}, {{"a", "b", 2}, {"b", "c", 4}, {"a", "c", 6}});
  auto q = type_flags(t246);
  CHECK_FALSE(q.large);
  CHECK(q.even);
  CHECK(q.free_of_infinity);
}

TEST_CASE("xxxl implies extra-large implies large") {
  for (const auto& g : testing::connected_labelled_graphs(3, {2, 3, 4, 6, 7})) {
    auto f = type_flags(g);
    if (f.xxxl) CHECK(f.extra_large);
    if (f.extra_large) CHECK(f.large);
  }
}

TEST_CASE("odd decomposition of the reference graphs") {
  auto d1 = odd_decomposition(gamma1);
  REQUIRE(d1.count() == 1);
  CHECK(d1.components[0] == VertexSet{0, 1, 2});
  CHECK(d1.oc_adjacency[0].empty());
  CHECK(d1.hanging[0] == HangingKind::kNotHanging);

  auto d2 = odd_decomposition(gamma2);
  REQUIRE(d2.count() == 2);
  CHECK(d2.components == std::vector<VertexSet>{{0}, {1, 2}});
  CHECK(d2.hanging == std::vector<HangingKind>{HangingKind::kNeedle, HangingKind::kBroad});

  auto d4 = odd_decomposition(gamma4);
  REQUIRE(d4.count() == 2);
  CHECK(d4.components == std::vector<VertexSet>{{0, 1}, {2}});
  CHECK(d4.hanging[1] == HangingKind::kForbiddenSingleton);
}

TEST_CASE("even leaf tips") {
  CHECK(even_leaf_tips(gamma2) == VertexSet{0});
  CHECK(even_leaf_tips(gamma1).empty());
  auto star = graph({"c", "x", "y"}, {{"c", "x", 4}, {"c", "y", 3}});
  CHECK(even_leaf_tips(star) == VertexSet{1});
}

TEST_CASE("product region graph of the reference graphs") {
  auto pr1 = product_region_graph(gamma1);
  REQUIRE(pr1.size() == 4);
  CHECK(pr1.nodes[0] == PRGraph::Node{PRGraph::Kind::kComponent, 0});
  CHECK(pr1.adjacency[0] == std::vector<std::size_t>{1, 2, 3});
  CHECK(pr1.edge_count() == 3);

  // {a} consists of an even-leaf tip and is pruned.
  auto d2 = odd_decomposition(gamma2);
  auto pr2 = product_region_graph(gamma2, d2);
  REQUIRE(pr2.size() == 3);
  CHECK(pr2.nodes[0] == PRGraph::Node{PRGraph::Kind::kComponent, 1});
  CHECK(pr2.adjacency[0] == std::vector<std::size_t>{1, 2});
  CHECK(pr2.edge_count() == 2);

  auto pr4 = product_region_graph(gamma4);
  REQUIRE(pr4.size() == 5);
  // Nodes: O1={a,b}, O2={g}, e_ab, e_ag, e_bg.
  CHECK(pr4.adjacency[0] == std::vector<std::size_t>{2, 3, 4});
  CHECK(pr4.adjacency[1] == std::vector<std::size_t>{3, 4});
  CHECK(pr4.edge_count() == 5);
}

TEST_CASE("product region graph hypotheses") {
  CHECK_THROWS_AS(product_region_graph(graph({"a", "b"}, {{"a", "b", 3}})), HypothesisError);
  CHECK_THROWS_AS(product_region_graph(graph({"a", "b", "c"}, {{"a", "b", 3}})), HypothesisError);
  CHECK_THROWS_AS(product_region_graph(graph({"a", "b", "c"}, {{"a", "b", 2}, {"b", "c", 3}})), HypothesisError);
}

TEST_CASE("discreteness after removal") {
  auto pr1 = product_region_graph(gamma1);
  CHECK(pr_discrete_after_removal(pr1, {0}));
  CHECK_FALSE(pr_discrete_after_removal(pr1, {}));
  CHECK_THROWS_AS(pr_discrete_after_removal(pr1, {1}), InvalidArgument);

  auto pr4 = product_region_graph(gamma4);
  CHECK(pr_discrete_after_removal(pr4, {0, 1}));
  CHECK_FALSE(pr_discrete_after_removal(pr4, {0}));
}

TEST_CASE("product region graph properties on the corpus") {
  testing::for_each_connected_labelled_graph(5, {3, 4}, [](const LabelledGraph& g) {
    if (g.size() < 3) return;
    auto d = odd_decomposition(g);
    auto pr = product_region_graph(g, d);
    for (std::size_t u = 0; u < pr.size(); ++u)
      for (auto w : pr.adjacency[u])
        if (pr.nodes[u].kind == pr.nodes[w].kind) FAIL("not bipartite: " << to_text(g));
    if (d.count() == 1 && !pr_discrete_after_removal(pr, {0})) FAIL("single component: " << to_text(g));
  });
}

TEST_CASE("abelianisation and stabiliser ranks") {
  CHECK(abelianization_rank(gamma1) == 1);
  CHECK(stabilizer_image_rank(gamma1, DihedralClass{0, 1}) == StabilizerRank{1, false});
  CHECK(abelianization_rank(gamma2) == 2);
  CHECK(stabilizer_image_rank(gamma2, DihedralClass{0, 1}) == StabilizerRank{2, false});
  CHECK(stabilizer_image_rank(gamma4, CentralizerClass{2}) == StabilizerRank{2, false});

  auto fig = hanging_example(true);
  // The core component has three neighbours in the odd component graph.
  auto core = stabilizer_image_rank(fig, CentralizerClass{fig.index("a")});
  CHECK(core.lower_bound);
  CHECK(core.value == 4);
  CHECK(core.to_string() == ">=4");
  CHECK(stabilizer_image_rank(fig, CentralizerClass{fig.index("d")}) == StabilizerRank{2, false});

  CHECK_THROWS_AS(stabilizer_image_rank(gamma2, DihedralClass{0, 2}), InvalidArgument);
  CHECK_THROWS_AS(stabilizer_image_rank(gamma2, CentralizerClass{9}), InvalidArgument);
  CHECK_THROWS_AS(stabilizer_image_rank(graph({"a", "b"}, {{"a", "b", 3}}), CentralizerClass{0}),
                  HypothesisError);
}

TEST_CASE("Hopf verdicts") {
  auto v1 = hopf_verdict(gamma1);
  CHECK(v1.hopfian());
  CHECK(v1.branch == HopfBranch::kSingleOdd);

  auto v4 = hopf_verdict(gamma4);
  CHECK_FALSE(v4.hopfian());
  REQUIRE(v4.obstructions.size() == 1);
  CHECK(v4.obstructions[0] == Obstruction{Obstruction::Kind::kForbiddenSingleton, {2}});
  CHECK(verdict_line(gamma4, v4) == "UNKNOWN: forbidden singleton hanging component {g}");

  auto v2 = hopf_verdict(gamma2);
  CHECK(v2.hopfian());
  CHECK(v2.branch == HopfBranch::kTwoOddNeedle);

  auto fig = hanging_example(true);
  auto vf = hopf_verdict(fig);
  CHECK_FALSE(vf.hopfian());
  REQUIRE(vf.obstructions.size() == 1);
  CHECK(vf.obstructions[0].vertices == VertexSet{fig.index("g")});
  auto vg = hopf_verdict(hanging_example(false));
  CHECK(vg.hopfian());
  CHECK(vg.branch == HopfBranch::kThreePlusOdd);

  auto broad = graph({"a", "b", "c", "d"}, {{"a", "b", 3}, {"b", "c", 4}, {"c", "d", 5}});
  CHECK(hopf_verdict(broad).branch == HopfBranch::kTwoOddBroad);

  auto small = graph({"a", "b"}, {{"a", "b", 4}});
  CHECK(hopf_verdict(small).branch == HopfBranch::kSmall);
}

TEST_CASE("Hopf obstructions from type") {
  auto two = graph({"a", "b", "c"}, {{"a", "b", 2}, {"b", "c", 3}});
  auto v = hopf_verdict(two);
  CHECK_FALSE(v.hopfian());
  REQUIRE(v.obstructions.size() == 1);
  CHECK(v.obstructions[0].kind == Obstruction::Kind::kNonLargeLabel);
  CHECK(verdict_line(two, v) == "UNKNOWN: label 2 < 3 on edge {a,b}");

  auto t333 = graph({"a", "b", "c"}, {{"a", "b", 3}, {"b", "c", 3}, {"a", "c", 3}});
  auto w = hopf_verdict(t333);
  REQUIRE(w.obstructions.size() == 1);
  CHECK(w.obstructions[0] == Obstruction{Obstruction::Kind::kNonHyperbolicTriangle, {0, 1, 2}});
}

TEST_CASE("free products combine component verdicts") {
  // Gamma4 next to a disjoint odd edge: obstruction indices refer to the
  // whole graph.
  GraphBuilder b;
  for (auto v : {"p", "q", "a", "b", "g"}) b.add_vertex(v);
  b.add_edge("p", "q", 5).add_edge("a", "b", 3).add_edge("a", "g", 4).add_edge("b", "g", 4);
  auto g = b.build();
  auto v = hopf_verdict(g);
  CHECK_FALSE(v.hopfian());
  REQUIRE(v.obstructions.size() == 1);
  CHECK(v.obstructions[0].vertices == VertexSet{4});
  CHECK_FALSE(theorem_applicable(g));

  GraphBuilder c;
  for (auto x : {"p", "q", "r", "s"}) c.add_vertex(x);
  c.add_edge("p", "q", 5).add_edge("r", "s", 4);
  auto ok = hopf_verdict(c.build());
  CHECK(ok.hopfian());
  CHECK(ok.branch == HopfBranch::kFreeProduct);
}

TEST_CASE("known classes") {
  auto six = graph({"a", "b", "c"}, {{"a", "b", 6}, {"b", "c", 7}, {"a", "c", 8}});
  auto k = known_classes_report(six);
  CHECK(std::find(k.begin(), k.end(), KnownClass::kXXXL) != k.end());
  CHECK(std::find(k.begin(), k.end(), KnownClass::kFreeOfInfinity) != k.end());
  auto k1 = known_classes_report(gamma1);
  CHECK(std::find(k1.begin(), k1.end(), KnownClass::kSingleOddComponent) != k1.end());
  auto k2 = known_classes_report(gamma2);
  CHECK(std::find(k2.begin(), k2.end(), KnownClass::kTriangleFree) != k2.end());
}

TEST_CASE("decision tree agrees with the brute-force hypotheses on graphs up to 5 vertices") {
  std::size_t graphs = 0;
  testing::for_each_connected_labelled_graph(5, {3, 4, 5}, [&](const LabelledGraph& g) {
    ++graphs;
    auto v = hopf_verdict(g);
    auto o = testing::hopf_oracle(g);
    if (v.hopfian() != o.hopfian) FAIL("verdict mismatch: " << to_text(g));
    std::set<std::set<std::string>> forbidden;
    for (const auto& ob : v.obstructions) {
      if (ob.kind != Obstruction::Kind::kForbiddenSingleton) continue;
      std::set<std::string> s;
      for (auto x : ob.vertices) s.insert(g.name(x));
      forbidden.insert(s);
    }
    auto f = type_flags(g);
    if (f.large && f.hyperbolic && forbidden != o.forbidden) FAIL("obstruction mismatch: " << to_text(g));
    if (abelianization_rank(g) != o.odd_components) FAIL("rank mismatch: " << to_text(g));
  });
  CHECK(graphs > 100000);
}

TEST_CASE("verdicts are invariant under relabelling") {
  std::mt19937_64 rng(7);
  auto corpus = testing::connected_labelled_graphs(4, {3, 4, 5, 6});
  for (std::size_t i = 0; i < corpus.size(); i += 7) {
    const auto& g = corpus[i];
    std::vector<std::size_t> perm(g.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto h = relabel(g, perm);
    auto a = hopf_verdict(g), b = hopf_verdict(h);
    CHECK(a.outcome == b.outcome);
    CHECK(a.branch == b.branch);
    CHECK(odd_decomposition(g).count() == odd_decomposition(h).count());
  }
}

TEST_CASE("theorem applicability implies a Hopfian verdict") {
  testing::for_each_connected_labelled_graph(4, {2, 3, 4}, [](const LabelledGraph& g) {
    if (theorem_applicable(g) && !hopf_verdict(g).hopfian()) FAIL(to_text(g));
  });
}

TEST_CASE("text and JSON reports") {
  auto r = classify(gamma1);
  auto text = to_text(gamma1, r);
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("verdict: HOPFIAN (single-odd)"));
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("odd components: 1\n  {a,b,c} not-hanging"));
  auto j = to_json(gamma4, classify(gamma4));
  CHECK(j["verdict"]["outcome"] == "UNKNOWN");
  CHECK(j["verdict"]["obstructions"][0]["kind"] == "forbidden-singleton");
  CHECK(j["verdict"]["obstructions"][0]["vertices"][0] == "g");
  CHECK(j["odd_components"][1]["hanging"] == "forbidden-singleton");
}
