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

#include "artin/chhs.hpp"
#include "support/corpus.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace artin;

namespace {

BlowupInput load(const std::string& name) {
  std::ifstream in(std::string(ARTIN_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_blowup(ss.str());
}

// Two non-adjacent vertices of Lk(D) are joined through W but not through
// any W edge whose ends both contain D.
bool is_fullness_violation(const SimpleGraph& x, const XGraph& w, const ChhsReport::FullnessWitness& f) {
  auto lk = simplex_link(x, f.delta);
  if (!lk.test(f.v) || !lk.test(f.w) || x.adjacent(f.v, f.w)) return false;
  bool through_w = false, through_local = false;
  for (auto [i, j] : w.graph().edges()) {
    for (int flip = 0; flip < 2; ++flip) {
      const auto& s = w.maximal()[flip ? j : i];
      const auto& r = w.maximal()[flip ? i : j];
      if (!s.test(f.v) || !r.test(f.w)) continue;
      through_w = true;
      if (f.delta.is_subset_of(s) && f.delta.is_subset_of(r) && !f.delta.test(f.v) && !f.delta.test(f.w))
        through_local = true;
    }
  }
  return through_w && !through_local;
}

}  // namespace

TEST_CASE("edge blowup with complete W") {
  auto in = load("edge.blowup");
  auto w = XGraph::complete(in.X.graph());
  auto r = chhs_check(in.X.graph(), w, Rational(1), 25);
  CHECK(r.chain_ok);
  CHECK(r.chain.length == 5);
  CHECK(r.fullness_ok);
  CHECK(r.maximal == 2);
}

TEST_CASE("edge blowup with edgeless W") {
  auto in = load("edge.blowup");
  XGraph w(in.X.graph());
  auto r = chhs_check(in.X.graph(), w, Rational(1), 25);
  CHECK(r.fullness_ok);
  CHECK(r.fullness_instances == 0);
  CHECK(r.chain.length <= 25);
  CHECK_FALSE(chhs_check(in.X.graph(), w, Rational(1), 4).chain_ok);
}

TEST_CASE("fullness violation is reported with a genuine witness") {
  auto in = load("fullness_gap.blowup");
  auto r = chhs_check(in.X.graph(), in.W, Rational(1), 25);
  CHECK_FALSE(r.fullness_ok);
  CHECK_FALSE(r.passed());
  REQUIRE(r.fullness_witness);
  CHECK(is_fullness_violation(in.X.graph(), in.W, *r.fullness_witness));
  // The hand-built gap at {v,y1} is also a violation.
  const auto& x = in.X.graph();
  ChhsReport::FullnessWitness built{in.X.mask({"v", "y1"}), *x.find("x"), *x.find("z")};
  CHECK(is_fullness_violation(x, in.W, built));
}

TEST_CASE("reported fullness witnesses are genuine on random W") {
  std::mt19937_64 rng(5);
  std::size_t failures = 0;
  testing::for_each_corpus_blowup(4, 2, [&](const BlowupComplex& X) {
    XGraph w(X.graph());
    std::bernoulli_distribution coin(0.3);
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = i + 1; j < w.size(); ++j)
        if (coin(rng)) w.add_edge(i, j);
    auto r = chhs_check(X.graph(), w, Rational(1), 25);
    if (!r.chain_ok) FAIL("chain bound");
    if (r.fullness_witness) {
      ++failures;
      if (!is_fullness_violation(X.graph(), w, *r.fullness_witness)) FAIL("spurious witness");
    }
  });
  CHECK(failures > 0);
}

TEST_CASE("class hyperbolicity data") {
  auto in = load("edge.blowup");
  auto r = chhs_check(in.X.graph(), in.W, Rational(1), 25);
  CHECK(r.links.size() == r.classes);
  for (const auto& h : r.links) {
    CHECK(h.multiplicative >= Rational(1));
    CHECK(h.additive >= 0);
  }
  auto loose = chhs_check(in.X.graph(), in.W, Rational(100), 25);
  CHECK(loose.links.size() == r.links.size());
}

TEST_CASE("W must belong to X") {
  auto a = load("edge.blowup");
  auto b = load("fullness_gap.blowup");
  CHECK_THROWS_AS(chhs_check(a.X.graph(), b.W, Rational(1), 25), InvalidArgument);
}

TEST_CASE("reports") {
  auto in = load("fullness_gap.blowup");
  auto r = chhs_check(in.X.graph(), in.W, Rational(1), 25);
  auto text = to_text(in.X.graph(), r);
  CHECK_THAT(text, Catch::Matchers::ContainsSubstring("axiom 4 (fullness): FAIL"));
  auto j = to_json(in.X.graph(), r);
  CHECK(j["axiom4"]["pass"] == false);
  CHECK(j["axiom1"]["pass"] == true);
}
