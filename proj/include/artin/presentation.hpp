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

// Finite presentations of Artin groups and their quotients: Shephard
// groups, the uniform Dehn-filling quotients, and quotients by kernels
// given by a base of classes with multipliers. Abelianisations are
// computed by Smith normal form over arbitrary precision integers.

#include "artin/common.hpp"
#include "artin/labelled_graph.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace artin {

struct Letter {
  std::size_t gen;
  int sign;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Appends with adjacent-inverse cancellation.
inline void append(Word& w, Letter l) {
  if (!w.empty() && w.back().gen == l.gen && w.back().sign == -l.sign)
    w.pop_back();
  else
    w.push_back(l);
}

inline void append(Word& w, const Word& tail) {
  for (auto l : tail) append(w, l);
}

inline Word inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->sign});
  return out;
}

/// w^k for k >= 0; negative k uses the inverse.
inline Word power(const Word& w, long k) {
  Word base = k < 0 ? inverse(w) : w;
  Word out;
  for (long i = 0; i < std::labs(k); ++i) append(out, base);
  return out;
}

/// The alternating word a b a b ... of length n. Throws InvalidArgument for
/// n < 1.
inline Word prod_word(std::size_t a, std::size_t b, int n) {
  if (n < 1) throw InvalidArgument("prod needs length >= 1");
  Word w;
  for (int i = 0; i < n; ++i) w.push_back({i % 2 == 0 ? a : b, 1});
  return w;
}

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

inline Word artin_relator(const Edge& e) {
  Word w = prod_word(e.u, e.v, e.label);
  append(w, inverse(prod_word(e.v, e.u, e.label)));
  return w;
}

/// One relator prod(a,b,m) prod(b,a,m)^-1 per edge, in declaration order
/// and declared orientation.
inline Presentation artin_presentation(const LabelledGraph& g) {
  Presentation p{g.names(), {}};
  for (const auto& e : g.edges()) p.relators.push_back(artin_relator(e));
  return p;
}

inline Word generator_power(std::size_t v, long k) { return power(Word{{v, 1}}, k); }

inline Word dihedral_power(const Edge& e, long k) {
  return power(Word{{e.u, 1}, {e.v, 1}}, k);
}

/// Artin relators plus c^N for every generator c.
inline Presentation shephard_presentation(const LabelledGraph& g, int N) {
  if (N < 1) throw InvalidArgument("N must be >= 1");
  auto p = artin_presentation(g);
  for (Vertex v = 0; v < g.size(); ++v) p.relators.push_back(generator_power(v, N));
  return p;
}

/// Shephard relators plus (ab)^{m_ab N} for every edge.
inline Presentation hyperbolic_quotient_presentation(const LabelledGraph& g, int N) {
  auto p = shephard_presentation(g, N);
  for (const auto& e : g.edges()) p.relators.push_back(dihedral_power(e, static_cast<long>(e.label) * N));
  return p;
}

/// A class in the base of a kernel: an odd component (named by any of its
/// vertices) or the dihedral class of an edge.
struct ComponentClass {
  Vertex vertex;
};
struct EdgeClass {
  Vertex a;
  Vertex b;
};

struct KernelEntry {
  std::variant<ComponentClass, EdgeClass> cls;
  long multiplier;
};

using KernelSpec = std::vector<KernelEntry>;

/// Least vertex of the odd component containing v.
inline Vertex component_representative(const LabelledGraph& g, Vertex v) {
  for (const auto& comp : connected_components(odd_subgraph(g)))
    if (std::binary_search(comp.begin(), comp.end(), v)) return comp.front();
  throw InvalidArgument("unknown vertex");
}

namespace detail {

/// Normalised key of a class: (0, representative) or (1, edge index).
inline std::pair<int, std::size_t> class_key(const LabelledGraph& g, const KernelEntry& e) {
  if (const auto* c = std::get_if<ComponentClass>(&e.cls)) {
    g.check_vertex(c->vertex);
    return {0, component_representative(g, c->vertex)};
  }
  const auto& d = std::get<EdgeClass>(e.cls);
  g.check_vertex(d.a);
  g.check_vertex(d.b);
  auto idx = g.edge_index(d.a, d.b);
  if (!idx) throw InvalidArgument("no edge between '" + g.name(d.a) + "' and '" + g.name(d.b) + "'");
  return {1, *idx};
}

}  // namespace detail

/// Throws InvalidArgument on unknown vertices or edges, duplicate classes,
/// or multipliers below 1.
inline void validate_kernel(const LabelledGraph& g, const KernelSpec& spec) {
  std::vector<std::pair<int, std::size_t>> keys;
  for (const auto& e : spec) {
    if (e.multiplier < 1) throw InvalidArgument("multiplier must be >= 1");
    keys.push_back(detail::class_key(g, e));
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) throw InvalidArgument("duplicate class in kernel base");
}

/// Artin relators, then s^M for component classes (s the least vertex of
/// the component) in vertex order, then (ab)^{m M} for dihedral classes in
/// edge order.
inline Presentation kernel_presentation(const LabelledGraph& g, const KernelSpec& spec) {
  validate_kernel(g, spec);
  std::vector<std::pair<std::pair<int, std::size_t>, long>> keyed;
  for (const auto& e : spec) keyed.push_back({detail::class_key(g, e), e.multiplier});
  std::sort(keyed.begin(), keyed.end());
  auto p = artin_presentation(g);
  for (const auto& [key, m] : keyed) {
    if (key.first == 0) {
      p.relators.push_back(generator_power(key.second, m));
    } else {
      const auto& e = g.edges()[key.second];
      p.relators.push_back(dihedral_power(e, e.label * m));
    }
  }
  return p;
}

/// Every odd component and every edge, each with multiplier N.
inline KernelSpec full_kernel(const LabelledGraph& g, long N) {
  KernelSpec spec;
  for (const auto& comp : connected_components(odd_subgraph(g))) spec.push_back({ComponentClass{comp.front()}, N});
  for (const auto& e : g.edges()) spec.push_back({EdgeClass{e.u, e.v}, N});
  return spec;
}

/// True iff D divides every multiplier. Throws InvalidArgument for D < 1.
inline bool is_deep_enough(const KernelSpec& spec, long D) {
  if (D < 1) throw InvalidArgument("D must be >= 1");
  return std::all_of(spec.begin(), spec.end(), [&](const auto& e) { return e.multiplier % D == 0; });
}

inline bool is_deep_enough(const std::vector<long>& multipliers, long D) {
  if (D < 1) throw InvalidArgument("D must be >= 1");
  return std::all_of(multipliers.begin(), multipliers.end(), [&](long m) { return m % D == 0; });
}

/// Relator multiset with every pure generator power c^k replaced by s^k
/// for s the representative of c's odd component, deduplicated and sorted.
inline std::vector<Word> normalized_relators(const LabelledGraph& g, const Presentation& p) {
  std::vector<Word> out;
  for (auto w : p.relators) {
    bool pure = !w.empty() && std::all_of(w.begin(), w.end(), [&](const Letter& l) { return l == w.front(); });
    if (pure) {
      auto rep = component_representative(g, w.front().gen);
      for (auto& l : w) l.gen = rep;
    }
    out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Line grammar: `component <vertex> <M>` or `dihedral <a> <b> <M>`.
inline KernelSpec parse_kernel_spec(const LabelledGraph& g, std::string_view text) {
  KernelSpec spec;
  for (const auto& line : detail::tokenize_lines(text)) {
    const auto& head = line.tokens[0];
    auto vertex = [&](const detail::Token& tok) {
      auto v = g.find(tok.text);
      if (!v) throw ParseError(line.number, tok.column, "unknown vertex '" + tok.text + "'");
      return *v;
    };
    KernelEntry e{ComponentClass{0}, 0};
    const detail::Token* mult = nullptr;
    if (head.text == "component" && line.tokens.size() == 3) {
      e.cls = ComponentClass{vertex(line.tokens[1])};
      mult = &line.tokens[2];
    } else if (head.text == "dihedral" && line.tokens.size() == 4) {
      auto a = vertex(line.tokens[1]);
      auto b = vertex(line.tokens[2]);
      if (!g.adjacent(a, b)) throw ParseError(line.number, line.tokens[2].column, "no such edge");
      e.cls = EdgeClass{a, b};
      mult = &line.tokens[3];
    } else {
      throw ParseError(line.number, head.column, "expected 'component <v> <M>' or 'dihedral <a> <b> <M>'");
    }
    e.multiplier = detail::parse_int_token(line, *mult, "multiplier");
    if (e.multiplier < 1) throw ParseError(line.number, mult->column, "multiplier must be >= 1");
    spec.push_back(e);
    try {
      validate_kernel(g, spec);
    } catch (const InvalidArgument& err) {
      throw ParseError(line.number, head.column, err.what());
    }
  }
  return spec;
}

using BigInt = boost::multiprecision::cpp_int;

/// Z^rank plus the torsion factors (each > 1, each dividing the next).
struct AbelianInvariants {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;

  bool free() const noexcept { return torsion.empty(); }
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

inline std::string to_string(const AbelianInvariants& a) {
  std::vector<std::string> parts;
  if (a.rank > 0) parts.push_back(a.rank == 1 ? "Z" : "Z^" + std::to_string(a.rank));
  for (const auto& t : a.torsion) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "trivial";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
  return out;
}

/// Diagonal entries of the Smith normal form (non-negative, chained by
/// divisibility, zeros last), one per min(rows, cols).
inline std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  const std::size_t steps = std::min(rows, cols);
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest non-zero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) {
        diag.resize(steps, 0);
        return diag;
      }
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        BigInt q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        BigInt q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility by folding an offending row into row t.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs(m[t][t]));
  }
  return diag;
}

/// Exponent-sum matrix of the relators: one row per relator.
inline std::vector<std::vector<BigInt>> relation_matrix(const Presentation& p) {
  std::vector<std::vector<BigInt>> m(p.relators.size(), std::vector<BigInt>(p.generators.size(), 0));
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (const auto& l : p.relators[r]) m[r][l.gen] += l.sign;
  return m;
}

inline AbelianInvariants abelianization(const Presentation& p) {
  AbelianInvariants a;
  auto diag = smith_diagonal(relation_matrix(p));
  std::size_t nonzero = 0;
  for (const auto& d : diag) {
    if (d == 0) continue;
    ++nonzero;
    if (d != 1) a.torsion.push_back(d);
  }
  a.rank = p.generators.size() - nonzero;
  return a;
}

namespace detail {

inline bool is_simple_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) {
           return std::isalnum(ch) || ch == '_';
         });
}

/// Written form of the inverse of generator g: capitalised first letter if
/// that is unambiguous, else `g^-1`.
inline std::string inverse_text(const std::vector<std::string>& gens, std::size_t g) {
  const auto& name = gens[g];
  if (std::islower(static_cast<unsigned char>(name[0]))) {
    std::string cap = name;
    cap[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(cap[0])));
    if (std::find(gens.begin(), gens.end(), cap) == gens.end()) return cap;
  }
  return name + "^-1";
}

inline std::string word_body(const std::vector<std::string>& gens, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += w[i].sign > 0 ? gens[w[i].gen] : inverse_text(gens, w[i].gen);
  }
  return out;
}

}  // namespace detail

/// Text form of a word, using `x^k` or `(...)^k` when the word is a
/// perfect power.
inline std::string word_text(const std::vector<std::string>& gens, const Word& w) {
  if (w.empty()) return "1";
  const std::size_t n = w.size();
  for (std::size_t len = 1; len < n; ++len) {
    if (n % len != 0) continue;
    bool periodic = true;
    for (std::size_t i = len; i < n && periodic; ++i) periodic = w[i] == w[i - len];
    if (!periodic) continue;
    Word root(w.begin(), w.begin() + static_cast<long>(len));
    auto k = std::to_string(n / len);
    if (len == 1) return gens[root[0].gen] + "^" + (root[0].sign < 0 ? "-" : "") + k;
    return "(" + detail::word_body(gens, root) + ")^" + k;
  }
  return detail::word_body(gens, w);
}

inline std::string to_text(const Presentation& p) {
  std::string out = "gen";
  for (const auto& g : p.generators) out += " " + g;
  out += "\n";
  for (const auto& r : p.relators) out += "rel " + word_text(p.generators, r) + "\n";
  return out;
}

namespace detail {

class WordParser {
 public:
  WordParser(const std::vector<std::string>& gens, const Line& line, const Token& start, std::string_view text)
      : gens_(gens), line_(line), column_(start.column), text_(text) {}

  Word parse() {
    Word w = sequence();
    skip();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  Word sequence() {
    Word w;
    for (;;) {
      skip();
      if (pos_ >= text_.size() || text_[pos_] == ')') return w;
      append(w, item());
    }
  }

  Word item() {
    Word base;
    if (text_[pos_] == '(') {
      ++pos_;
      base = sequence();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') error("expected ')'");
      ++pos_;
    } else {
      base = atom();
    }
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      std::size_t start = pos_;
      if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      auto digits = text_.substr(start, pos_ - start);
      if (digits.empty() || digits == "-") error("expected exponent");
      long k = std::stol(std::string(digits));
      return power(base, k);
    }
    return base;
  }

  Word atom() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) error("expected generator");
    std::string id(text_.substr(start, pos_ - start));
    auto it = std::find(gens_.begin(), gens_.end(), id);
    if (it != gens_.end()) return {{static_cast<std::size_t>(it - gens_.begin()), 1}};
    if (std::isupper(static_cast<unsigned char>(id[0]))) {
      std::string low = id;
      low[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(low[0])));
      auto jt = std::find(gens_.begin(), gens_.end(), low);
      if (jt != gens_.end()) return {{static_cast<std::size_t>(jt - gens_.begin()), -1}};
    }
    pos_ = start;
    error("unknown generator '" + id + "'");
  }

  void skip() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  [[noreturn]] void error(const std::string& what) const { throw ParseError(line_.number, column_ + pos_, what); }

  const std::vector<std::string>& gens_;
  const Line& line_;
  std::size_t column_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `gen <id>...` followed by `rel <word>` lines. Generator names
/// must be alphanumeric or '_'. Throws ParseError.
inline Presentation parse_presentation(std::string_view text) {
  Presentation p;
  bool have_gen = false;
  for (const auto& line : detail::tokenize_lines(text)) {
    const auto& head = line.tokens[0];
    if (head.text == "gen") {
      if (have_gen) throw ParseError(line.number, head.column, "duplicate 'gen' line");
      have_gen = true;
      for (std::size_t k = 1; k < line.tokens.size(); ++k) {
        const auto& tok = line.tokens[k];
        if (!detail::is_simple_identifier(tok.text))
          throw ParseError(line.number, tok.column, "generator names must be alphanumeric");
        if (std::find(p.generators.begin(), p.generators.end(), tok.text) != p.generators.end())
          throw ParseError(line.number, tok.column, "duplicate generator '" + tok.text + "'");
        p.generators.push_back(tok.text);
      }
    } else if (head.text == "rel") {
      if (!have_gen) throw ParseError(line.number, head.column, "'rel' before 'gen'");
      if (line.tokens.size() < 2) throw ParseError(line.number, head.column, "empty relator");
      // Re-join the tokens; the word grammar handles its own spacing.
      std::string body;
      for (std::size_t k = 1; k < line.tokens.size(); ++k) {
        const auto& tok = line.tokens[k];
        body.resize(tok.column - line.tokens[1].column, ' ');
        body += tok.text;
      }
      if (body == "1") {
        p.relators.emplace_back();
        continue;
      }
      detail::WordParser parser(p.generators, line, line.tokens[1], body);
      p.relators.push_back(parser.parse());
    } else {
      throw ParseError(line.number, head.column, "unknown directive '" + head.text + "'");
    }
  }
  if (!have_gen) throw ParseError(1, 1, "missing 'gen' line");
  return p;
}

inline nlohmann::ordered_json to_json(const Presentation& p) {
  using J = nlohmann::ordered_json;
  J rels = J::array();
  for (const auto& r : p.relators) {
    J w = J::array();
    for (const auto& l : r) w.push_back(J::array({p.generators[l.gen], l.sign}));
    rels.push_back(w);
  }
  return J{{"generators", p.generators}, {"relators", rels}};
}

}  // namespace artin
