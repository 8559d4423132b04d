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

// Validators for finite, tabulated composite projection systems and
// composite rotating families.
//
// Distances are exact rationals and are checked exactly as tabulated; the
// coarse (kappa) triangle inequality of the monotone modification is not
// modelled. Properness, finite filling and proper isotropy hold
// automatically on finite data and are reported as vacuous.

#include "artin/common.hpp"
#include "artin/simple_graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace artin {

/// A composite projection system on finitely many points.
class CPSData {
 public:
  /// Adds a point of colour `colour`. Throws InvalidArgument on duplicates.
  std::size_t add_point(const std::string& id, const std::string& colour) {
    if (find(id)) throw InvalidArgument("duplicate point '" + id + "'");
    auto it = std::find(colour_names_.begin(), colour_names_.end(), colour);
    std::size_t c = static_cast<std::size_t>(it - colour_names_.begin());
    if (it == colour_names_.end()) colour_names_.push_back(colour);
    ids_.push_back(id);
    colour_.push_back(c);
    for (auto& row : act_) row.push_back(false);
    act_.emplace_back(ids_.size(), false);
    return ids_.size() - 1;
  }

  void add_active(std::size_t y, std::size_t x) { act_.at(y).at(x) = true; }

  /// Sets d_y(x, z). Throws InvalidArgument outside the domain or for a
  /// negative value. Storage is allocated on first use.
  void set_distance(std::size_t y, std::size_t x, std::size_t z, const Rational& value) {
    if (!defined(y, x, z))
      throw InvalidArgument("d_" + ids_[y] + "(" + ids_[x] + "," + ids_[z] +
                            ") is outside Act(" + ids_[y] + ") - {" + ids_[y] + "}");
    if (value < 0) throw InvalidArgument("negative distance");
    ensure_table();
    dist_[slot(y, x, z)] = value;
  }

  void set_theta(const Rational& t) {
    if (t < 0) throw InvalidArgument("theta must be non-negative");
    theta_ = t;
  }

  /// Fills the diagonal with 0 and mirrors one-sided entries, then checks
  /// that every d_y(x,z) on the domain is present. Throws InvalidArgument.
  void finalize() {
    ensure_table();
    const auto n = size();
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
          if (!defined(y, x, z)) continue;
          auto& v = dist_[slot(y, x, z)];
          if (v) continue;
          if (x == z)
            v = Rational(0);
          else if (const auto& m = dist_[slot(y, z, x)])
            v = *m;
          else
            throw InvalidArgument("missing distance d_" + ids_[y] + "(" + ids_[x] + "," + ids_[z] + ")");
        }
  }

  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::optional<std::size_t> find(const std::string& id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (ids_[i] == id) return i;
    return std::nullopt;
  }
  std::size_t colour(std::size_t i) const { return colour_.at(i); }
  const std::string& colour_name(std::size_t c) const { return colour_names_.at(c); }
  std::size_t colour_count() const noexcept { return colour_names_.size(); }
  bool active(std::size_t y, std::size_t x) const { return act_.at(y).at(x); }
  const Rational& theta() const noexcept { return theta_; }

  /// d_y(x,z) is defined iff x, z lie in Act(y) - {y}.
  bool defined(std::size_t y, std::size_t x, std::size_t z) const {
    return x != y && z != y && act_[y][x] && act_[y][z];
  }

  /// Tabulated d_y(x,z); InvalidArgument if undefined or missing.
  const Rational& d(std::size_t y, std::size_t x, std::size_t z) const {
    if (!defined(y, x, z) || dist_.empty() || !dist_[slot(y, x, z)])
      throw InvalidArgument("d_" + ids_.at(y) + "(" + ids_.at(x) + "," + ids_.at(z) +
                            ") evaluated outside its domain");
    return *dist_[slot(y, x, z)];
  }

 private:
  std::size_t slot(std::size_t y, std::size_t x, std::size_t z) const {
    const auto n = size();
    return (y * n + x) * n + z;
  }
  void ensure_table() {
    const auto n = size();
    if (dist_.size() != n * n * n) dist_.assign(n * n * n, std::nullopt);
  }

  std::vector<std::string> ids_;
  std::vector<std::size_t> colour_;
  std::vector<std::string> colour_names_;
  std::vector<std::vector<bool>> act_;
  std::vector<std::optional<Rational>> dist_;
  Rational theta_{0};
};

/// Permutation of the points, image[i] = g(i).
using Perm = std::vector<std::size_t>;

inline Perm compose(const Perm& g, const Perm& h) {  // g after h
  Perm out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = g[h[i]];
  return out;
}

inline Perm inverse(const Perm& g) {
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[g[i]] = i;
  return out;
}

inline Perm identity_perm(std::size_t n) {
  Perm out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

inline bool is_identity(const Perm& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != i) return false;
  return true;
}

/// All elements of the subgroup generated by `gens`, sorted.
inline std::vector<Perm> generated_subgroup(const std::vector<Perm>& gens, std::size_t n) {
  std::set<Perm> seen{identity_perm(n)};
  std::vector<Perm> frontier{identity_perm(n)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& a : frontier)
      for (const auto& g : gens) {
        auto b = compose(g, a);
        if (seen.insert(b).second) next.push_back(std::move(b));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

inline std::string cycle_text(const CPSData& cps, const Perm& g) {
  std::string out;
  std::vector<bool> done(g.size(), false);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (done[i] || g[i] == i) continue;
    out += "(";
    for (std::size_t j = i; !done[j]; j = g[j]) {
      done[j] = true;
      out += (j == i ? "" : " ") + cps.id(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

/// A composite projection system with a finite group action by declared
/// permutations and a rotating family Gamma_x given by generators.
struct RotatingFamilyData {
  CPSData cps;
  std::vector<std::string> perm_names;
  std::vector<Perm> perms;
  std::vector<std::vector<std::size_t>> gamma;  // per point: perm indices
  Rational theta_rot{0};
  /// Optional graph S on the same points for the strong BGI check.
  std::optional<SimpleGraph> s_graph;
};

enum class AxiomStatus { kPass, kFail, kVacuous };

inline const char* to_string(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::kPass: return "PASS";
    case AxiomStatus::kFail: return "FAIL";
    case AxiomStatus::kVacuous: return "VACUOUS";
  }
  return "?";
}

/// One axiom's verdict. `witness` holds point or permutation indices in the
/// order documented by each check; `element` carries a group element that
/// is not one of the declared permutations.
struct AxiomResult {
  AxiomResult() = default;
  explicit AxiomResult(std::string name) : axiom(std::move(name)) {}

  std::string axiom;
  AxiomStatus status = AxiomStatus::kPass;
  std::vector<std::size_t> witness;
  std::optional<Perm> element;
  std::string witness_text;
  std::string note;

  bool failed() const noexcept { return status == AxiomStatus::kFail; }
};

struct ProjectionReport {
  std::vector<AxiomResult> axioms;
  Rational properness_constant{0};

  bool passed() const {
    return std::none_of(axioms.begin(), axioms.end(), [](const auto& a) { return a.failed(); });
  }

  const AxiomResult& at(const std::string& name) const {
    for (const auto& a : axioms)
      if (a.axiom == name) return a;
    throw InvalidArgument("no axiom named '" + name + "'");
  }
};

namespace detail {

inline std::string tuple_text(const CPSData& c, std::size_t y, std::initializer_list<std::size_t> rest) {
  std::string out = "(" + c.id(y) + ";";
  bool first = true;
  for (auto r : rest) {
    out += (first ? "" : ",") + c.id(r);
    first = false;
  }
  return out + ")";
}

}  // namespace detail

/// Exhaustive check of the composite projection system axioms. Witness
/// layouts:
///   colour-containment (y, x): x has y's colour, x not in Act(y)
///   symmetry-in-action (y, x): x in Act(y), y not in Act(x)
///   symmetry (y, x, z): d_y(x,z) != d_y(z,x)
///   triangle-inequality (y, a, m, b): d_y(a,b) > d_y(a,m) + d_y(m,b)
///   behrstock (y, x, z): d_y(x,z) > theta and d_z(x,y) > theta
///   separation (y, z): d_y(z,z) >= theta
///   closeness-in-inaction (x, z, y): x not in Act(z), d_y(x,z) > theta
/// The first violation in lexicographic order of the witness is reported.
inline ProjectionReport cps_check(const CPSData& c) {
  const auto n = c.size();
  const auto& theta = c.theta();
  ProjectionReport r;
  auto fail = [&](AxiomResult& a, std::vector<std::size_t> w, std::string text) {
    a.status = AxiomStatus::kFail;
    a.witness = std::move(w);
    a.witness_text = std::move(text);
  };

  AxiomResult colour{"colour-containment"};
  for (std::size_t y = 0; y < n && !colour.failed(); ++y)
    for (std::size_t x = 0; x < n; ++x)
      if (c.colour(x) == c.colour(y) && !c.active(y, x)) {
        fail(colour, {y, x}, "(" + c.id(y) + "," + c.id(x) + ")");
        break;
      }
  r.axioms.push_back(colour);

  AxiomResult sym_act{"symmetry-in-action"};
  for (std::size_t y = 0; y < n && !sym_act.failed(); ++y)
    for (std::size_t x = 0; x < n; ++x)
      if (c.active(y, x) && !c.active(x, y)) {
        fail(sym_act, {y, x}, "(" + c.id(y) + "," + c.id(x) + ")");
        break;
      }
  r.axioms.push_back(sym_act);

  AxiomResult sym{"symmetry"};
  for (std::size_t y = 0; y < n && !sym.failed(); ++y)
    for (std::size_t x = 0; x < n && !sym.failed(); ++x)
      for (std::size_t z = 0; z < n; ++z)
        if (c.defined(y, x, z) && c.d(y, x, z) != c.d(y, z, x)) {
          fail(sym, {y, x, z}, detail::tuple_text(c, y, {x, z}));
          break;
        }
  r.axioms.push_back(sym);

  AxiomResult tri{"triangle-inequality"};
  for (std::size_t y = 0; y < n && !tri.failed(); ++y)
    for (std::size_t a = 0; a < n && !tri.failed(); ++a)
      for (std::size_t m = 0; m < n && !tri.failed(); ++m)
        for (std::size_t b = 0; b < n; ++b) {
          if (!c.defined(y, a, b) || !c.defined(y, a, m) || !c.defined(y, m, b)) continue;
          if (c.d(y, a, b) > c.d(y, a, m) + c.d(y, m, b)) {
            fail(tri, {y, a, m, b}, detail::tuple_text(c, y, {a, m, b}));
            break;
          }
        }
  r.axioms.push_back(tri);

  AxiomResult beh{"behrstock"};
  for (std::size_t y = 0; y < n && !beh.failed(); ++y)
    for (std::size_t x = 0; x < n && !beh.failed(); ++x)
      for (std::size_t z = 0; z < n; ++z) {
        if (!c.defined(y, x, z) || !c.defined(z, x, y)) continue;
        if (std::min(c.d(y, x, z), c.d(z, x, y)) > theta) {
          fail(beh, {y, x, z}, detail::tuple_text(c, y, {x, z}));
          break;
        }
      }
  r.axioms.push_back(beh);

  Rational max_d{0};
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t z = 0; z < n; ++z)
        if (c.defined(y, x, z)) max_d = std::max(max_d, c.d(y, x, z));
  r.properness_constant = max_d + 1;
  AxiomResult proper{"properness"};
  proper.status = AxiomStatus::kVacuous;
  proper.note = "finite data; uniform properness holds with T = " + to_string(r.properness_constant);
  r.axioms.push_back(proper);

  AxiomResult sep{"separation"};
  for (std::size_t y = 0; y < n && !sep.failed(); ++y)
    for (std::size_t z = 0; z < n; ++z)
      if (c.defined(y, z, z) && !(c.d(y, z, z) < theta)) {
        fail(sep, {y, z}, detail::tuple_text(c, y, {z}));
        break;
      }
  r.axioms.push_back(sep);

  AxiomResult close{"closeness-in-inaction"};
  for (std::size_t x = 0; x < n && !close.failed(); ++x)
    for (std::size_t z = 0; z < n && !close.failed(); ++z) {
      if (c.active(z, x)) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (!c.active(x, y) || !c.active(z, y) || !c.defined(y, x, z)) continue;
        if (c.d(y, x, z) > theta) {
          fail(close, {x, z, y}, "(" + c.id(x) + "," + c.id(z) + ";" + c.id(y) + ")");
          break;
        }
      }
    }
  r.axioms.push_back(close);

  AxiomResult filling{"finite-filling"};
  filling.status = AxiomStatus::kVacuous;
  filling.note = "finite data; every family is covered by finitely many active sets";
  r.axioms.push_back(filling);
  return r;
}

/// Throws InvalidArgument unless every permutation is a bijection of the
/// points and every Gamma_x generator fixes x.
inline void validate_rotating_family(const RotatingFamilyData& f) {
  const auto n = f.cps.size();
  for (std::size_t p = 0; p < f.perms.size(); ++p) {
    const auto& g = f.perms[p];
    std::vector<bool> hit(n, false);
    if (g.size() != n) throw InvalidArgument("permutation '" + f.perm_names[p] + "' has wrong size");
    for (auto i : g) {
      if (i >= n || hit[i]) throw InvalidArgument("permutation '" + f.perm_names[p] + "' is not bijective");
      hit[i] = true;
    }
  }
  if (f.gamma.size() != n) throw InvalidArgument("gamma table has wrong size");
  for (std::size_t x = 0; x < n; ++x)
    for (auto p : f.gamma[x]) {
      if (p >= f.perms.size()) throw InvalidArgument("unknown permutation index");
      if (f.perms[p][x] != x)
        throw InvalidArgument("Gamma_" + f.cps.id(x) + " generator '" + f.perm_names[p] +
                              "' does not fix " + f.cps.id(x));
    }
}

/// Composite rotating family axioms, appended to the projection system
/// report. Witness layouts (p, q are permutation indices):
///   action-colours (p, c1, c2): colours c1 != c2 have points mapped to a common colour or vice versa
///   action-act (p, y, x): x in Act(y) but g x not in Act(g y), or the reverse
///   action-distance (p, y, x, z): d_{gy}(gx,gz) != d_y(x,z)
///   rotations (x, p, y) or (x, p, y, a, b): generator of Gamma_x moves y or
///     changes d_y(a,b)
///   equivariance (p, x): Gamma_{gx} != g Gamma_x g^-1
///   commutation (x, z, p, q): x not in Act(z), generators do not commute
///   rotation-bound (y, x, z) plus `element`: d_y(x,z) <= theta but
///     d_y(x, g z) < theta_rot for g in Gamma_y - {1}
inline ProjectionReport crf_check(const RotatingFamilyData& f) {
  validate_rotating_family(f);
  const auto& c = f.cps;
  const auto n = c.size();
  ProjectionReport r = cps_check(c);
  auto fail = [&](AxiomResult& a, std::vector<std::size_t> w, std::string text) {
    a.status = AxiomStatus::kFail;
    a.witness = std::move(w);
    a.witness_text = std::move(text);
  };

  AxiomResult colours{"action-colours"};
  for (std::size_t p = 0; p < f.perms.size() && !colours.failed(); ++p) {
    std::map<std::size_t, std::size_t> forward;
    std::map<std::size_t, std::size_t> backward;
    for (std::size_t i = 0; i < n; ++i) {
      auto a = c.colour(i);
      auto b = c.colour(f.perms[p][i]);
      auto [fit, fnew] = forward.try_emplace(a, b);
      auto [bit, bnew] = backward.try_emplace(b, a);
      if (fit->second != b) {
        fail(colours, {p, a, fit->second}, f.perm_names[p] + " splits colour " + c.colour_name(a));
        break;
      }
      if (bit->second != a) {
        fail(colours, {p, a, bit->second}, f.perm_names[p] + " merges colours " + c.colour_name(a) +
                                               " and " + c.colour_name(bit->second));
        break;
      }
    }
  }
  r.axioms.push_back(colours);

  AxiomResult act{"action-act"};
  for (std::size_t p = 0; p < f.perms.size() && !act.failed(); ++p) {
    const auto& g = f.perms[p];
    for (std::size_t y = 0; y < n && !act.failed(); ++y)
      for (std::size_t x = 0; x < n; ++x)
        if (c.active(y, x) != c.active(g[y], g[x])) {
          fail(act, {p, y, x}, f.perm_names[p] + " at (" + c.id(y) + "," + c.id(x) + ")");
          break;
        }
  }
  r.axioms.push_back(act);

  AxiomResult dist{"action-distance"};
  for (std::size_t p = 0; p < f.perms.size() && !dist.failed(); ++p) {
    const auto& g = f.perms[p];
    for (std::size_t y = 0; y < n && !dist.failed(); ++y)
      for (std::size_t x = 0; x < n && !dist.failed(); ++x)
        for (std::size_t z = 0; z < n; ++z) {
          if (!c.defined(y, x, z) || !c.defined(g[y], g[x], g[z])) continue;
          if (c.d(g[y], g[x], g[z]) != c.d(y, x, z)) {
            fail(dist, {p, y, x, z}, f.perm_names[p] + " at " + detail::tuple_text(c, y, {x, z}));
            break;
          }
        }
  }
  r.axioms.push_back(dist);

  AxiomResult rot{"rotations"};
  for (std::size_t x = 0; x < n && !rot.failed(); ++x)
    for (auto p : f.gamma[x]) {
      const auto& g = f.perms[p];
      for (std::size_t y = 0; y < n && !rot.failed(); ++y) {
        if (y != x && c.active(x, y)) continue;
        if (g[y] != y) {
          fail(rot, {x, p, y}, "Gamma_" + c.id(x) + " generator " + f.perm_names[p] + " moves " + c.id(y));
          break;
        }
        for (std::size_t a = 0; a < n && !rot.failed(); ++a)
          for (std::size_t b = 0; b < n; ++b) {
            if (!c.defined(y, a, b) || !c.defined(y, g[a], g[b])) continue;
            if (c.d(y, g[a], g[b]) != c.d(y, a, b)) {
              fail(rot, {x, p, y, a, b}, "Gamma_" + c.id(x) + " generator " + f.perm_names[p] +
                                             " changes d at " + detail::tuple_text(c, y, {a, b}));
              break;
            }
          }
      }
      if (rot.failed()) break;
    }
  r.axioms.push_back(rot);

  AxiomResult isotropy{"proper-isotropy"};
  isotropy.status = AxiomStatus::kVacuous;
  isotropy.note = "finite groups; every sublevel set is finite";
  r.axioms.push_back(isotropy);

  std::vector<std::vector<Perm>> groups(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Perm> gens;
    for (auto p : f.gamma[x]) gens.push_back(f.perms[p]);
    groups[x] = generated_subgroup(gens, n);
  }

  AxiomResult equi{"equivariance"};
  for (std::size_t p = 0; p < f.perms.size() && !equi.failed(); ++p) {
    const auto& g = f.perms[p];
    const auto g_inv = inverse(g);
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<Perm> conj;
      for (const auto& h : groups[x]) conj.push_back(compose(g, compose(h, g_inv)));
      std::sort(conj.begin(), conj.end());
      if (conj != groups[g[x]]) {
        fail(equi, {p, x}, f.perm_names[p] + " at " + c.id(x));
        break;
      }
    }
  }
  r.axioms.push_back(equi);

  AxiomResult comm{"commutation"};
  for (std::size_t x = 0; x < n && !comm.failed(); ++x)
    for (std::size_t z = 0; z < n && !comm.failed(); ++z) {
      if (c.active(z, x)) continue;
      for (auto p : f.gamma[x]) {
        for (auto q : f.gamma[z])
          if (compose(f.perms[p], f.perms[q]) != compose(f.perms[q], f.perms[p])) {
            fail(comm, {x, z, p, q}, "(" + c.id(x) + "," + c.id(z) + ") generators " +
                                         f.perm_names[p] + ", " + f.perm_names[q]);
            break;
          }
        if (comm.failed()) break;
      }
    }
  r.axioms.push_back(comm);

  AxiomResult bound{"rotation-bound"};
  bool any_rotation = false;
  for (std::size_t y = 0; y < n && !bound.failed(); ++y) {
    for (const auto& g : groups[y]) {
      if (is_identity(g)) continue;
      any_rotation = true;
      for (std::size_t x = 0; x < n && !bound.failed(); ++x)
        for (std::size_t z = 0; z < n; ++z) {
          if (c.colour(x) != c.colour(y) || c.colour(z) != c.colour(y)) continue;
          if (!c.defined(y, x, z) || !c.defined(y, x, g[z])) continue;
          if (c.d(y, x, z) <= c.theta() && c.d(y, x, g[z]) < f.theta_rot) {
            fail(bound, {y, x, z}, detail::tuple_text(c, y, {x, z}) + " g=" + cycle_text(c, g));
            bound.element = g;
            break;
          }
        }
      if (bound.failed()) break;
    }
  }
  if (!any_rotation) bound.status = AxiomStatus::kVacuous;
  bound.note = "premise threshold is the projection system's theta";
  r.axioms.push_back(bound);
  return r;
}

/// Strong bounded geodesic image on the graph S for constant C: whenever
/// d_s(x,y) > C, every geodesic from x to y in S meets a vertex w with
/// d_S(w,s) <= C and (w = s or w not in Act(s)). Witness (s, x, y) followed
/// by a geodesic that avoids all such w.
inline AxiomResult strong_bgi_check(const RotatingFamilyData& f, const Rational& C) {
  AxiomResult a{"strong-bgi"};
  if (!f.s_graph) {
    a.status = AxiomStatus::kVacuous;
    a.note = "no graph S declared";
    return a;
  }
  const auto& c = f.cps;
  const auto& S = *f.s_graph;
  const auto n = c.size();
  auto dist = all_pairs_distances(S, S.all());
  for (std::size_t s = 0; s < n; ++s) {
    VertexMask avoid(n);  // vertices that do not serve as w
    for (std::size_t w = 0; w < n; ++w) {
      bool good = dist[w][s] != kUnreachable && Rational(dist[w][s]) <= C && (w == s || !c.active(s, w));
      if (!good) avoid.set(w);
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!c.defined(s, x, y) || c.d(s, x, y) <= C) continue;
        const int dxy = dist[x][y];
        if (dxy == kUnreachable || !avoid.test(x) || !avoid.test(y)) continue;
        // Walk the geodesic layers from x keeping only avoiding vertices.
        std::vector<std::size_t> parent(n, n);
        std::vector<std::size_t> layer{x};
        for (int k = 1; k <= dxy && !layer.empty(); ++k) {
          std::vector<std::size_t> next;
          for (auto u : layer) {
            const auto& nb = S.neighbours(u);
            for (auto v = nb.find_first(); v != VertexMask::npos; v = nb.find_next(v)) {
              if (!avoid.test(v) || parent[v] != n || v == x) continue;
              if (dist[x][v] != k || dist[v][y] != dxy - k) continue;
              parent[v] = u;
              next.push_back(v);
            }
          }
          layer = std::move(next);
        }
        if (dxy == 0 || parent[y] != n) {
          a.status = AxiomStatus::kFail;
          a.witness = {s, x, y};
          std::vector<std::size_t> path{y};
          while (path.back() != x) path.push_back(parent[path.back()]);
          std::reverse(path.begin(), path.end());
          std::string text = "(" + c.id(s) + ";" + c.id(x) + "," + c.id(y) + ") geodesic";
          for (auto v : path) {
            a.witness.push_back(v);
            text += " " + c.id(v);
          }
          a.witness_text = text;
          return a;
        }
      }
  }
  return a;
}

namespace detail {

inline Perm parse_cycles(const CPSData& c, const Line& line, const Token& tok, Perm g) {
  const auto& t = tok.text;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] == ' ') {
      ++i;
      continue;
    }
    if (t[i] != '(') throw ParseError(line.number, tok.column + i, "expected '(' in cycle");
    auto close = t.find(')', i);
    if (close == std::string::npos) throw ParseError(line.number, tok.column + i, "unbalanced '('");
    std::vector<std::size_t> cycle;
    std::istringstream in(t.substr(i + 1, close - i - 1));
    std::string id;
    while (in >> id) {
      auto idx = c.find(id);
      if (!idx) throw ParseError(line.number, tok.column + i, "unknown point '" + id + "'");
      cycle.push_back(*idx);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      auto from = cycle[k];
      auto to = cycle[(k + 1) % cycle.size()];
      if (g[from] != from && cycle.size() > 1)
        throw ParseError(line.number, tok.column + i, "permutation not bijective: '" + c.id(from) + "' repeated");
      g[from] = to;
    }
    std::vector<std::size_t> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError(line.number, tok.column + i, "permutation not bijective: repeated point in cycle");
    i = close + 1;
  }
  return g;
}

}  // namespace detail

/// Grammar: `colour <i> <id>...`, `act <y> <x>...` (Act(y), accumulated),
/// `dist <y> <x> <z> <p/q>`, `theta <p/q>`; for rotating families also
/// `perm <name> (<id> ...)...`, `gamma <x> <name>...`, `thetarot <p/q>`,
/// and `sedge <id> <id>` for the graph S. Throws ParseError.
inline RotatingFamilyData parse_projection_data(std::string_view text) {
  auto lines = detail::tokenize_lines(text);
  RotatingFamilyData f;
  auto& c = f.cps;
  // Points first so later lines may refer to any of them.
  for (const auto& line : lines) {
    if (line.tokens[0].text != "colour") continue;
    if (line.tokens.size() < 3) throw ParseError(line.number, line.tokens[0].column, "expected 'colour <i> <id>...'");
    for (std::size_t k = 2; k < line.tokens.size(); ++k) {
      if (c.find(line.tokens[k].text))
        throw ParseError(line.number, line.tokens[k].column, "duplicate point '" + line.tokens[k].text + "'");
      c.add_point(line.tokens[k].text, line.tokens[1].text);
    }
  }
  auto point = [&](const detail::Line& line, const detail::Token& tok) {
    auto idx = c.find(tok.text);
    if (!idx) throw ParseError(line.number, tok.column, "unknown point '" + tok.text + "'");
    return *idx;
  };
  bool have_theta = false;
  struct PendingDist {
    const detail::Line* line;
    std::size_t y, x, z;
    Rational value;
  };
  std::vector<PendingDist> pending;
  std::vector<const detail::Line*> gamma_lines;
  f.gamma.assign(c.size(), {});
  SimpleGraph s_graph(c.ids());
  bool have_s = false;
  for (const auto& line : lines) {
    const auto& head = line.tokens[0];
    const auto argc = line.tokens.size() - 1;
    if (head.text == "colour") continue;
    if (head.text == "act") {
      if (argc < 1) throw ParseError(line.number, head.column, "expected 'act <y> <x>...'");
      auto y = point(line, line.tokens[1]);
      for (std::size_t k = 2; k < line.tokens.size(); ++k) c.add_active(y, point(line, line.tokens[k]));
    } else if (head.text == "dist") {
      if (argc != 4) throw ParseError(line.number, head.column, "expected 'dist <y> <x> <z> <p/q>'");
      auto value = detail::parse_rational_token(line, line.tokens[4]);
      if (value < 0) throw ParseError(line.number, line.tokens[4].column, "negative distance");
      pending.push_back({&line, point(line, line.tokens[1]), point(line, line.tokens[2]),
                         point(line, line.tokens[3]), value});
    } else if (head.text == "theta" || head.text == "thetarot") {
      if (argc != 1) throw ParseError(line.number, head.column, "expected '" + head.text + " <p/q>'");
      auto value = detail::parse_rational_token(line, line.tokens[1]);
      if (value < 0) throw ParseError(line.number, line.tokens[1].column, "negative constant");
      if (head.text == "theta") {
        c.set_theta(value);
        have_theta = true;
      } else {
        f.theta_rot = value;
      }
    } else if (head.text == "perm") {
      if (argc < 1) throw ParseError(line.number, head.column, "expected 'perm <name> (cycles)...'");
      const auto& name = line.tokens[1].text;
      if (std::find(f.perm_names.begin(), f.perm_names.end(), name) != f.perm_names.end())
        throw ParseError(line.number, line.tokens[1].column, "duplicate permutation '" + name + "'");
      Perm g = identity_perm(c.size());
      for (std::size_t k = 2; k < line.tokens.size(); ++k) g = detail::parse_cycles(c, line, line.tokens[k], g);
      f.perm_names.push_back(name);
      f.perms.push_back(std::move(g));
    } else if (head.text == "gamma") {
      if (argc < 1) throw ParseError(line.number, head.column, "expected 'gamma <x> <name>...'");
      gamma_lines.push_back(&line);
    } else if (head.text == "sedge") {
      if (argc != 2) throw ParseError(line.number, head.column, "expected 'sedge <id> <id>'");
      auto u = point(line, line.tokens[1]);
      auto v = point(line, line.tokens[2]);
      if (u == v) throw ParseError(line.number, line.tokens[2].column, "self-loop");
      s_graph.add_edge(u, v);
      have_s = true;
    } else {
      throw ParseError(line.number, head.column, "unknown directive '" + head.text + "'");
    }
  }
  if (!have_theta) throw ParseError(lines.empty() ? 1 : lines.back().number, 1, "missing 'theta' line");
  for (const auto& p : pending) {
    try {
      c.set_distance(p.y, p.x, p.z, p.value);
    } catch (const InvalidArgument& e) {
      throw ParseError(p.line->number, p.line->tokens[0].column, e.what());
    }
  }
  try {
    c.finalize();
  } catch (const InvalidArgument& e) {
    throw ParseError(lines.empty() ? 1 : lines.back().number, 1, e.what());
  }
  for (const auto* line : gamma_lines) {
    auto x = point(*line, line->tokens[1]);
    for (std::size_t k = 2; k < line->tokens.size(); ++k) {
      const auto& tok = line->tokens[k];
      auto it = std::find(f.perm_names.begin(), f.perm_names.end(), tok.text);
      if (it == f.perm_names.end())
        throw ParseError(line->number, tok.column, "unknown permutation '" + tok.text + "'");
      auto p = static_cast<std::size_t>(it - f.perm_names.begin());
      if (f.perms[p][x] != x)
        throw ParseError(line->number, tok.column, "Gamma_" + c.id(x) + " generator '" + tok.text +
                                                        "' does not fix " + c.id(x));
      f.gamma[x].push_back(p);
    }
  }
  if (have_s) f.s_graph = std::move(s_graph);
  return f;
}

inline std::string to_text(const ProjectionReport& r) {
  std::string out;
  for (const auto& a : r.axioms) {
    out += a.axiom + ": " + to_string(a.status);
    if (!a.witness_text.empty()) out += " witness " + a.witness_text;
    if (!a.note.empty()) out += " (" + a.note + ")";
    out += "\n";
  }
  out += "note: distances are checked exactly as tabulated; no coarse modification is applied\n";
  out += std::string("overall: ") + (r.passed() ? "PASS" : "FAIL") + "\n";
  return out;
}

inline nlohmann::ordered_json to_json(const ProjectionReport& r) {
  using J = nlohmann::ordered_json;
  J axioms = J::array();
  for (const auto& a : r.axioms) {
    J w = J::array();
    for (auto i : a.witness) w.push_back(i);
    axioms.push_back({{"axiom", a.axiom},
                      {"status", to_string(a.status)},
                      {"witness", w},
                      {"witness_text", a.witness_text},
                      {"note", a.note}});
  }
  return J{{"axioms", axioms},
           {"properness_constant", to_string(r.properness_constant)},
           {"pass", r.passed()}};
}

}  // namespace artin
