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

// Random Artin groups: each edge of the complete graph on n vertices draws
// its label uniformly from {inf, 2, ..., f(n)}, inf meaning no edge. Monte
// Carlo estimates of how often classification predicates hold, and of
// connectivity in the Erdos-Renyi model G(n, p).
//
// Every trial draws from its own generator keyed by (seed, trial index), so
// results do not depend on the number of worker threads.

#include "artin/classify.hpp"
#include "artin/common.hpp"
#include "artin/labelled_graph.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

namespace artin {

struct ModelConfig {
  std::size_t n = 0;
  int f = 2;  // f(n): the label pool is {inf, 2, ..., f}
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
};

inline void validate(const ModelConfig& cfg) {
  if (cfg.f < 2) throw InvalidArgument("f(n) must be >= 2");
  if (cfg.trials < 1) throw InvalidArgument("trials must be >= 1");
}

/// Probability that a label drawn from {inf, 2, ..., f} is odd.
inline Rational odd_edge_probability(int f) {
  if (f < 2) throw InvalidArgument("f(n) must be >= 2");
  return Rational((f - 1) / 2, f);
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

enum class Stream : std::uint64_t { kLabels = 1, kErdosRenyi = 2 };

inline boost::random::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial, Stream s) {
  std::uint64_t key = splitmix64(splitmix64(seed ^ (static_cast<std::uint64_t>(s) << 56)) + trial);
  return boost::random::mt19937_64(key);
}

inline std::vector<std::string> vertex_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  return names;
}

/// Runs `body(trial)` for every trial on `jobs` threads and sums the
/// returned hit flags.
template <class Body>
std::uint64_t count_hits(std::uint64_t trials, unsigned jobs, Body body) {
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) hits += body(t) ? 1 : 0;
    return hits;
  }
  std::vector<std::uint64_t> partial(jobs, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      for (std::uint64_t t = w; t < trials; t += jobs) partial[w] += body(t) ? 1 : 0;
    });
  for (auto& th : pool) th.join();
  std::uint64_t hits = 0;
  for (auto h : partial) hits += h;
  return hits;
}

}  // namespace detail

/// The trial-th sample: vertices v0..v{n-1}, edges drawn in lexicographic
/// order of (i, j).
inline LabelledGraph sample_graph(const ModelConfig& cfg, std::uint64_t trial) {
  validate(cfg);
  auto rng = detail::trial_engine(cfg.seed, trial, detail::Stream::kLabels);
  boost::random::uniform_int_distribution<int> pick(0, cfg.f - 1);
  GraphBuilder b;
  for (const auto& name : detail::vertex_names(cfg.n)) b.add_vertex(name);
  for (std::size_t i = 0; i < cfg.n; ++i)
    for (std::size_t j = i + 1; j < cfg.n; ++j) {
      int k = pick(rng);  // 0 is inf, k >= 1 is label k + 1
      if (k > 0) b.add_edge(i, j, k + 1);
    }
  return b.build();
}

enum class Predicate {
  kLarge,
  kHyperbolic,
  kExtraLarge,
  kSingleOddComponent,
  kTheoremApplicable,
  kHopfVerdictHopfian,
};

inline const char* to_string(Predicate p) {
  switch (p) {
    case Predicate::kLarge: return "large";
    case Predicate::kHyperbolic: return "hyperbolic";
    case Predicate::kExtraLarge: return "extra_large";
    case Predicate::kSingleOddComponent: return "single_odd_component";
    case Predicate::kTheoremApplicable: return "theorem_applicable";
    case Predicate::kHopfVerdictHopfian: return "hopf_verdict_hopfian";
  }
  return "?";
}

inline std::optional<Predicate> parse_predicate(std::string_view s) {
  for (auto p : {Predicate::kLarge, Predicate::kHyperbolic, Predicate::kExtraLarge,
                 Predicate::kSingleOddComponent, Predicate::kTheoremApplicable,
                 Predicate::kHopfVerdictHopfian})
    if (s == to_string(p)) return p;
  return std::nullopt;
}

inline bool evaluate(Predicate p, const LabelledGraph& g) {
  auto min_label = [&](int bound) {
    for (const auto& e : g.edges())
      if (e.label < bound) return false;
    return true;
  };
  switch (p) {
    case Predicate::kLarge: return min_label(3);
    case Predicate::kExtraLarge: return min_label(4);
    case Predicate::kHyperbolic: return type_flags(g).hyperbolic;
    case Predicate::kSingleOddComponent: return odd_decomposition(g).count() == 1;
    // Cheap label scan first: most samples fail large type.
    case Predicate::kTheoremApplicable: return min_label(3) && theorem_applicable(g);
    case Predicate::kHopfVerdictHopfian: return min_label(3) && hopf_verdict(g).hopfian();
  }
  return false;
}

struct EstimateReport {
  std::string predicate;
  std::size_t n = 0;
  int f = 0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  double estimate() const { return trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0; }
  /// Standard error sqrt(p(1-p)/T) of the point estimate.
  double standard_error() const {
    double p = estimate();
    return std::sqrt(p * (1 - p) / static_cast<double>(trials));
  }
  /// 95% normal-approximation half-width. Degenerate near 0 and 1, where
  /// the Wilson interval is the better guide.
  double ci_half_width() const { return 1.959963984540054 * standard_error(); }
  std::pair<double, double> wilson() const {
    const double z = 1.959963984540054;
    const double t = static_cast<double>(trials);
    const double p = estimate();
    const double denom = 1 + z * z / t;
    const double centre = (p + z * z / (2 * t)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / t + z * z / (4 * t * t)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
  }
};

inline EstimateReport genericity_estimate(const ModelConfig& cfg, Predicate p, unsigned jobs = 1) {
  validate(cfg);
  EstimateReport r{to_string(p), cfg.n, cfg.f, 0, cfg.trials, cfg.seed};
  r.hits = detail::count_hits(cfg.trials, jobs, [&](std::uint64_t t) { return evaluate(p, sample_graph(cfg, t)); });
  return r;
}

/// The trial-th G(n, p) sample; each edge is present with probability
/// exactly p.
inline SimpleGraph sample_er_graph(std::size_t n, const Rational& p, std::uint64_t seed, std::uint64_t trial) {
  if (p < 0 || p > 1) throw InvalidArgument("p must lie in [0, 1]");
  auto rng = detail::trial_engine(seed, trial, detail::Stream::kErdosRenyi);
  boost::random::uniform_int_distribution<std::int64_t> pick(0, p.denominator() - 1);
  SimpleGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (pick(rng) < p.numerator()) g.add_edge(i, j);
  return g;
}

inline EstimateReport er_connectivity_estimate(std::size_t n, const Rational& p, std::uint64_t trials,
                                               std::uint64_t seed, unsigned jobs = 1) {
  if (p < 0 || p > 1) throw InvalidArgument("p must lie in [0, 1]");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  EstimateReport r{"er_connectivity", n, 0, 0, trials, seed};
  r.hits = detail::count_hits(trials, jobs, [&](std::uint64_t t) {
    auto g = sample_er_graph(n, p, seed, t);
    return components(g, g.all()).size() <= 1;
  });
  return r;
}

/// f as a function of n.
struct FExpr {
  enum class Kind { kN, kTwoN, kNSquared, kConst } kind = Kind::kN;
  int k = 0;

  int operator()(std::size_t n) const {
    switch (kind) {
      case Kind::kN: return static_cast<int>(n);
      case Kind::kTwoN: return static_cast<int>(2 * n);
      case Kind::kNSquared: return static_cast<int>(n * n);
      case Kind::kConst: return k;
    }
    return k;
  }

  std::string text() const {
    switch (kind) {
      case Kind::kN: return "n";
      case Kind::kTwoN: return "2n";
      case Kind::kNSquared: return "n^2";
      case Kind::kConst: return "const " + std::to_string(k);
    }
    return "?";
  }
};

struct SweepConfig {
  std::vector<std::size_t> ns;
  FExpr f;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> predicates;  // Predicate names or "er_connectivity"
};

/// Entries `key=value`, separated by newlines or ';'. Keys: n (comma
/// list), f (n | 2n | n^2 | const k), trials, seed, predicates (comma list).
/// Throws ParseError.
inline SweepConfig parse_sweep(std::string_view text) {
  SweepConfig cfg;
  bool have_n = false, have_pred = false;
  std::string normalized(text);
  for (auto& ch : normalized)
    if (ch == ';') ch = '\n';
  std::size_t line_no = 0;
  std::size_t start = 0;
  auto split_list = [](const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
      auto b = item.find_first_not_of(' ');
      auto e = item.find_last_not_of(' ');
      out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
    }
    return out;
  };
  while (start <= normalized.size()) {
    auto end = normalized.find('\n', start);
    if (end == std::string::npos) end = normalized.size();
    std::string line = normalized.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
      if (end == normalized.size()) break;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, b + 1, "expected key=value");
    auto trim = [](std::string s) {
      auto x = s.find_first_not_of(" \t\r");
      auto y = s.find_last_not_of(" \t\r");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    const std::size_t col = eq + 2;
    auto to_u64 = [&](const std::string& s) -> std::uint64_t {
      std::size_t pos = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(s, &pos);
      } catch (const std::exception&) {
        throw ParseError(line_no, col, "expected non-negative integer, got '" + s + "'");
      }
      if (pos != s.size() || s.empty() || s[0] == '-')
        throw ParseError(line_no, col, "expected non-negative integer, got '" + s + "'");
      return v;
    };
    if (key == "n") {
      cfg.ns.clear();
      for (const auto& item : split_list(value)) cfg.ns.push_back(to_u64(item));
      have_n = true;
    } else if (key == "f") {
      if (value == "n") {
        cfg.f = {FExpr::Kind::kN, 0};
      } else if (value == "2n") {
        cfg.f = {FExpr::Kind::kTwoN, 0};
      } else if (value == "n^2") {
        cfg.f = {FExpr::Kind::kNSquared, 0};
      } else if (value.rfind("const", 0) == 0) {
        cfg.f = {FExpr::Kind::kConst, static_cast<int>(to_u64(trim(value.substr(5))))};
      } else {
        throw ParseError(line_no, col, "f must be n, 2n, n^2 or const k");
      }
    } else if (key == "trials") {
      cfg.trials = to_u64(value);
      if (cfg.trials < 1) throw ParseError(line_no, col, "trials must be >= 1");
    } else if (key == "seed") {
      cfg.seed = to_u64(value);
    } else if (key == "predicates") {
      cfg.predicates.clear();
      for (const auto& item : split_list(value)) {
        if (item != "er_connectivity" && !parse_predicate(item))
          throw ParseError(line_no, col, "unknown predicate '" + item + "'");
        cfg.predicates.push_back(item);
      }
      have_pred = true;
    } else {
      throw ParseError(line_no, b + 1, "unknown key '" + key + "'");
    }
    if (end == normalized.size()) break;
  }
  if (!have_n) throw ParseError(line_no, 1, "missing n");
  if (!have_pred) throw ParseError(line_no, 1, "missing predicates");
  return cfg;
}

/// One report per (n, predicate), n-major. er_connectivity uses p = p(f(n)).
inline std::vector<EstimateReport> run_sweep(const SweepConfig& cfg, unsigned jobs = 1) {
  std::vector<EstimateReport> out;
  for (auto n : cfg.ns) {
    const int f = cfg.f(n);
    for (const auto& name : cfg.predicates) {
      if (name == "er_connectivity") {
        auto r = er_connectivity_estimate(n, odd_edge_probability(f), cfg.trials, cfg.seed, jobs);
        r.f = f;
        out.push_back(r);
      } else {
        out.push_back(genericity_estimate({n, f, cfg.seed, cfg.trials}, *parse_predicate(name), jobs));
      }
    }
  }
  return out;
}

inline std::string fixed6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

inline std::string to_csv(const std::vector<EstimateReport>& rows) {
  std::string out = "n,f,predicate,hits,trials,estimate,ci_half_width,wilson_lo,wilson_hi,seed\n";
  for (const auto& r : rows) {
    auto [lo, hi] = r.wilson();
    out += std::to_string(r.n) + "," + std::to_string(r.f) + "," + r.predicate + "," + std::to_string(r.hits) + "," +
           std::to_string(r.trials) + "," + fixed6(r.estimate()) + "," + fixed6(r.ci_half_width()) + "," +
           fixed6(lo) + "," + fixed6(hi) + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

inline nlohmann::ordered_json to_json(const EstimateReport& r) {
  auto [lo, hi] = r.wilson();
  return {{"n", r.n},
          {"f", r.f},
          {"predicate", r.predicate},
          {"hits", r.hits},
          {"trials", r.trials},
          {"estimate", fixed6(r.estimate())},
          {"ci_half_width", fixed6(r.ci_half_width())},
          {"wilson", {fixed6(lo), fixed6(hi)}},
          {"seed", r.seed}};
}

}  // namespace artin
