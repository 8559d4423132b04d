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

// Independent reference implementations. Each one is written from the
// definitions, shares no code with the library beyond data types, and is
// deliberately naive.

#include "artin/blowup.hpp"
#include "artin/labelled_graph.hpp"
#include "artin/presentation.hpp"
#include "artin/projection_systems.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace artin::testing {

// ---------------------------------------------------------------------------
// Hopf theorem hypotheses

struct HopfOracle {
  bool hopfian = false;
  std::size_t odd_components = 0;
  std::set<std::set<std::string>> forbidden;  // forbidden singleton components
};

/// Labels >= 3, no triangle with all labels 3, and every leaf of the odd
/// component graph is either a component with several vertices or a single
/// vertex of valence one. Graphs on at most two vertices are always
/// Hopfian. Works on connected graphs.
inline HopfOracle hopf_oracle(const LabelledGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (const auto& e : g.edges()) m[e.u][e.v] = m[e.v][e.u] = e.label;

  // Odd components by repeated relaxation.
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (m[a][b] % 2 == 1 && comp[b] < comp[a]) {
          comp[a] = comp[b];
          changed = true;
        }
  }
  std::set<std::size_t> ids(comp.begin(), comp.end());

  HopfOracle out;
  out.odd_components = ids.size();
  bool large = true, hyperbolic = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (m[a][b] != 0 && m[a][b] < 3) large = false;
      for (std::size_t c = b + 1; c < n; ++c)
        if (m[a][b] == 3 && m[b][c] == 3 && m[a][c] == 3) hyperbolic = false;
    }
  bool hanging_ok = true;
  for (auto id : ids) {
    std::set<std::size_t> neighbours;
    std::vector<std::size_t> members;
    for (std::size_t a = 0; a < n; ++a) {
      if (comp[a] != id) continue;
      members.push_back(a);
      for (std::size_t b = 0; b < n; ++b)
        if (m[a][b] != 0 && comp[b] != id) neighbours.insert(comp[b]);
    }
    if (neighbours.size() != 1 || members.size() > 1) continue;
    std::size_t valence = 0;
    for (std::size_t b = 0; b < n; ++b) valence += m[members[0]][b] != 0;
    if (valence != 1) {
      hanging_ok = false;
      out.forbidden.insert({g.name(members[0])});
    }
  }
  // With all labels >= 3 the hyperbolicity condition is exactly "no all-3
  // triangle"; with a label 2 present the graph already fails.
  out.hopfian = n <= 2 || (large && hyperbolic && hanging_ok);
  return out;
}

// ---------------------------------------------------------------------------
// Four-point constant via Floyd-Warshall and Gromov products

inline Rational delta_oracle(const SimpleGraph& g) {
  const std::size_t n = g.size();
  const long inf = 1L << 40;
  std::vector<std::vector<long>> d(n, std::vector<long>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (g.adjacent(i, j)) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  // 2 (x|y)_w = d(x,w) + d(y,w) - d(x,y); the constant is the largest
  // min((x|z)_w, (y|z)_w) - (x|y)_w over quadruples in one component.
  long best = 0;
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          if (d[w][x] >= inf || d[w][y] >= inf || d[w][z] >= inf) continue;
          long xy = d[x][w] + d[y][w] - d[x][y];
          long xz = d[x][w] + d[z][w] - d[x][z];
          long yz = d[y][w] + d[z][w] - d[y][z];
          best = std::max(best, std::min(xz, yz) - xy);
        }
  return Rational(best, 2);
}

// ---------------------------------------------------------------------------
// Abelian invariants via determinantal divisors

using BigInt = boost::multiprecision::cpp_int;
using Matrix = std::vector<std::vector<BigInt>>;

inline BigInt determinant(Matrix a) {
  // Cofactor expansion along the first row; matrices here are tiny.
  const std::size_t k = a.size();
  if (k == 0) return 1;
  if (k == 1) return a[0][0];
  BigInt total = 0;
  for (std::size_t col = 0; col < k; ++col) {
    if (a[0][col] == 0) continue;
    Matrix minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<BigInt> row;
      for (std::size_t c = 0; c < k; ++c)
        if (c != col) row.push_back(a[r][c]);
      minor.push_back(std::move(row));
    }
    BigInt term = a[0][col] * determinant(std::move(minor));
    total += col % 2 == 0 ? term : BigInt(-term);
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> pick(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == k) {
      f(pick);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

/// Free rank and the non-unit invariant factors of Z^cols / rowspace.
inline std::pair<std::size_t, std::vector<BigInt>> snf_oracle(const Matrix& m, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<BigInt> divisors{1};  // d_0 = 1
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    BigInt g = 0;
    for_each_subset(rows, k, [&](const auto& rs) {
      for_each_subset(cols, k, [&](const auto& cs) {
        Matrix sub(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[rs[i]][cs[j]];
        BigInt det = determinant(std::move(sub));
        if (det < 0) det = -det;
        g = boost::multiprecision::gcd(g, det);
      });
    });
    if (g == 0) break;
    divisors.push_back(g);
  }
  const std::size_t rank = divisors.size() - 1;
  std::vector<BigInt> torsion;
  for (std::size_t k = 1; k <= rank; ++k) {
    BigInt f = divisors[k] / divisors[k - 1];
    if (f != 1) torsion.push_back(f);
  }
  return {cols - rank, torsion};
}

/// Exponent-sum matrix of a presentation, built directly from the words.
inline Matrix exponent_matrix(const Presentation& p) {
  Matrix out;
  for (const auto& rel : p.relators) {
    std::vector<BigInt> row(p.generators.size(), 0);
    for (const auto& l : rel) row[l.gen] += l.sign;
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact probabilities by enumeration

inline bool connected_by_union_find(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  std::size_t parts = n;
  for (auto [u, v] : edges) {
    auto a = root(u), b = root(v);
    if (a != b) {
      parent[a] = b;
      --parts;
    }
  }
  return parts <= 1;
}

/// P(G(n, p) is connected), summed over all edge subsets.
inline Rational er_connected_exact(std::size_t n, const Rational& p) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  Rational total{0};
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    Rational w{1};
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (mask >> e & 1u) {
        edges.push_back(pairs[e]);
        w *= p;
      } else {
        w *= Rational(1) - p;
      }
    }
    if (connected_by_union_find(n, edges)) total += w;
  }
  return total;
}

/// Number of label assignments on the complete graph K_n, each edge drawing
/// from {inf, 2, ..., f}, whose odd-labelled edges connect all vertices.
/// The probability is this count over f^(n(n-1)/2).
inline std::uint64_t single_odd_assignments(std::size_t n, int f) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  // Pool entries 0..f-1: entry 0 is inf, entry k is label k + 1.
  std::vector<int> digits(pairs.size(), 0);
  std::uint64_t hits = 0;
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> odd;
    for (std::size_t e = 0; e < pairs.size(); ++e)
      if (digits[e] != 0 && (digits[e] + 1) % 2 == 1) odd.push_back(pairs[e]);
    if (connected_by_union_find(n, odd)) ++hits;
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == f) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  return hits;
}

// ---------------------------------------------------------------------------
// Replaying projection-system witnesses

/// True iff the witness stored in `a` violates the named axiom when the
/// axiom's formula is evaluated afresh on `f`.
inline bool replay_witness(const RotatingFamilyData& f, const AxiomResult& a) {
  const auto& c = f.cps;
  const auto& w = a.witness;
  const auto n = c.size();
  const auto& th = c.theta();
  auto apply = [](const Perm& g, std::size_t x) { return g[x]; };
  auto after = [&](const Perm& g, const Perm& h) {
    Perm out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = g[h[i]];
    return out;
  };
  auto closure = [&](std::size_t x) {
    std::set<Perm> group;
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    group.insert(id);
    for (bool grew = true; grew;) {
      grew = false;
      for (auto h : std::vector<Perm>(group.begin(), group.end()))
        for (auto p : f.gamma[x]) grew |= group.insert(after(f.perms[p], h)).second;
    }
    return group;
  };

  const auto& name = a.axiom;
  if (name == "colour-containment") return c.colour(w[1]) == c.colour(w[0]) && !c.active(w[0], w[1]);
  if (name == "symmetry-in-action") return c.active(w[0], w[1]) && !c.active(w[1], w[0]);
  if (name == "symmetry") return c.d(w[0], w[1], w[2]) != c.d(w[0], w[2], w[1]);
  if (name == "triangle-inequality")
    return c.d(w[0], w[1], w[3]) > c.d(w[0], w[1], w[2]) + c.d(w[0], w[2], w[3]);
  if (name == "behrstock") return c.d(w[0], w[1], w[2]) > th && c.d(w[2], w[1], w[0]) > th;
  if (name == "separation") return c.d(w[0], w[1], w[1]) >= th;
  if (name == "closeness-in-inaction")
    return !c.active(w[1], w[0]) && c.active(w[0], w[2]) && c.active(w[1], w[2]) && c.d(w[2], w[0], w[1]) > th;
  if (name == "action-colours") {
    // Colour w[1] is sent to several colours, or shares its image with
    // colour w[2].
    const auto& g = f.perms[w[0]];
    auto image = [&](std::size_t colour) {
      std::set<std::size_t> out;
      for (std::size_t i = 0; i < n; ++i)
        if (c.colour(i) == colour) out.insert(c.colour(apply(g, i)));
      return out;
    };
    auto first = image(w[1]);
    if (first.size() > 1) return true;
    if (w[1] == w[2]) return false;
    auto second = image(w[2]);
    return std::any_of(first.begin(), first.end(), [&](auto x) { return second.count(x) > 0; });
  }
  if (name == "action-act") {
    const auto& g = f.perms[w[0]];
    return c.active(w[1], w[2]) != c.active(g[w[1]], g[w[2]]);
  }
  if (name == "action-distance") {
    const auto& g = f.perms[w[0]];
    return c.d(g[w[1]], g[w[2]], g[w[3]]) != c.d(w[1], w[2], w[3]);
  }
  if (name == "rotations") {
    const auto& g = f.perms[w[1]];
    const bool outside = w[2] == w[0] || !c.active(w[0], w[2]);
    if (!outside) return false;
    if (w.size() == 3) return g[w[2]] != w[2];
    return c.d(w[2], g[w[3]], g[w[4]]) != c.d(w[2], w[3], w[4]);
  }
  if (name == "equivariance") {
    const auto& g = f.perms[w[0]];
    Perm g_inv(n);
    for (std::size_t i = 0; i < n; ++i) g_inv[g[i]] = i;
    std::set<Perm> conj;
    for (const auto& h : closure(w[1])) conj.insert(after(g, after(h, g_inv)));
    return conj != closure(g[w[1]]);
  }
  if (name == "commutation") {
    const auto& p = f.perms[w[2]];
    const auto& q = f.perms[w[3]];
    return !c.active(w[1], w[0]) && after(p, q) != after(q, p);
  }
  if (name == "rotation-bound") {
    if (!a.element) return false;
    const auto& g = *a.element;
    if (!closure(w[0]).count(g) || std::is_sorted(g.begin(), g.end())) return false;
    return c.d(w[0], w[1], w[2]) <= th && c.d(w[0], w[1], g[w[2]]) < f.theta_rot;
  }
  return false;
}

/// Replays a strong bounded geodesic image witness (s, x, y, path...).
inline bool replay_bgi_witness(const RotatingFamilyData& f, const AxiomResult& a, const Rational& C) {
  const auto& c = f.cps;
  const auto& S = *f.s_graph;
  const auto& w = a.witness;
  if (w.size() < 4) return false;
  const auto s = w[0], x = w[1], y = w[2];
  std::vector<std::size_t> path(w.begin() + 3, w.end());
  if (path.front() != x || path.back() != y || !(c.d(s, x, y) > C)) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!S.adjacent(path[i], path[i + 1])) return false;
  auto from_x = bfs_distances(S, x);
  if (from_x[y] != static_cast<int>(path.size()) - 1) return false;  // not a geodesic
  auto from_s = bfs_distances(S, s);
  for (auto v : path) {
    bool close = from_s[v] != kUnreachable && Rational(from_s[v]) <= C;
    if (close && (v == s || !c.active(s, v))) return false;
  }
  return true;
}

}  // namespace artin::testing
