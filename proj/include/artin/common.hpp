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

// Shared vocabulary: error types, exact rationals, vertex bitsets and the
// line tokenizer used by every text format in the library.

#include <boost/dynamic_bitset.hpp>
#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace artin {

/// Malformed input text. Carries a 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An operation was called on an input outside the regime where its
/// structure is defined (e.g. a disconnected graph for the product region
/// graph). The message names the failed precondition.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-formed request that refers to something that does not exist or
/// violates a stated invariant (unknown vertex, duplicate class, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

/// Parses "p/q" or "p". Throws std::invalid_argument on malformed text or a
/// zero denominator.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw std::invalid_argument("empty integer in rational");
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(std::string(s), &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    if (pos != s.size())
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t p = parse_int(text.substr(0, slash));
  std::int64_t q = parse_int(text.substr(slash + 1));
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

/// Vertex subsets of small graphs. Bit i is vertex i.
using VertexMask = boost::dynamic_bitset<std::uint64_t>;

inline std::vector<std::size_t> mask_to_indices(const VertexMask& m) {
  std::vector<std::size_t> out;
  out.reserve(m.count());
  for (auto i = m.find_first(); i != VertexMask::npos; i = m.find_next(i))
    out.push_back(i);
  return out;
}

inline VertexMask indices_to_mask(std::size_t n, const std::vector<std::size_t>& idx) {
  VertexMask m(n);
  for (auto i : idx) m.set(i);
  return m;
}

/// Lexicographic order on sorted index lists; the empty set is least.
inline bool lex_less(const VertexMask& a, const VertexMask& b) {
  auto ia = a.find_first();
  auto ib = b.find_first();
  while (ia != VertexMask::npos && ib != VertexMask::npos) {
    if (ia != ib) return ia < ib;
    ia = a.find_next(ia);
    ib = b.find_next(ib);
  }
  return ia == VertexMask::npos && ib != VertexMask::npos;
}

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
};

/// Splits text into non-empty lines of whitespace-separated tokens. `#`
/// starts a comment running to end of line. A parenthesised group is kept
/// as one token even if it contains blanks, so simplex and permutation
/// literals may be written with spaces.
inline std::vector<Line> tokenize_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    Line line{line_no, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      if (i >= raw.size()) break;
      std::size_t tok_start = i;
      int depth = 0;
      std::string tok;
      while (i < raw.size()) {
        char c = raw[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth <= 0 && (c == ' ' || c == '\t' || c == '\r')) break;
        tok.push_back(c == '\t' || c == '\r' ? ' ' : c);
        ++i;
      }
      if (depth > 0)
        throw ParseError(line_no, tok_start + 1, "unbalanced '('");
      line.tokens.push_back({std::move(tok), tok_start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

inline int parse_int_token(const Line& line, const Token& tok, std::string_view what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(tok.text, &pos);
  } catch (const std::exception&) {
    throw ParseError(line.number, tok.column, "expected integer " + std::string(what));
  }
  if (pos != tok.text.size() || v > 1'000'000'000 || v < -1'000'000'000)
    throw ParseError(line.number, tok.column, "expected integer " + std::string(what));
  return static_cast<int>(v);
}

inline Rational parse_rational_token(const Line& line, const Token& tok) {
  try {
    return parse_rational(tok.text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line.number, tok.column, e.what());
  }
}

}  // namespace detail
}  // namespace artin
