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

// Command-line driver. `run` parses arguments, dispatches to a subcommand
// and returns the process exit code:
//   0 success, 1 verdict UNKNOWN or an axiom failure,
//   2 usage, parse or hypothesis error, 3 internal error.

#include "artin/blowup.hpp"
#include "artin/chhs.hpp"
#include "artin/classify.hpp"
#include "artin/hyperbolicity.hpp"
#include "artin/labelled_graph.hpp"
#include "artin/presentation.hpp"
#include "artin/projection_systems.hpp"
#include "artin/random_model.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace artin::cli {

enum ExitCode : int { kOk = 0, kUnknown = 1, kUsage = 2, kInternal = 3 };

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Globals {
  bool json = false;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
};

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline int classify_cmd(const Globals& g, const std::string& path, std::string& out) {
  auto graph = parse_graph(read_file(path));
  auto report = classify(graph);
  out = g.json ? dump(to_json(graph, report)) : to_text(graph, report);
  return report.verdict.hopfian() ? kOk : kUnknown;
}

inline int pr_graph_cmd(const Globals& g, const std::string& path, std::string& out) {
  auto graph = parse_graph(read_file(path));
  auto d = odd_decomposition(graph);
  auto pr = product_region_graph(graph, d);
  if (!g.json) {
    out = pr_to_dot(graph, d, pr);
    return kOk;
  }
  using J = nlohmann::ordered_json;
  J nodes = J::array();
  for (const auto& node : pr.nodes)
    nodes.push_back({{"kind", node.kind == PRGraph::Kind::kComponent ? "component" : "edge"},
                     {"name", pr_node_name(graph, d, node)}});
  J edges = J::array();
  for (std::size_t u = 0; u < pr.size(); ++u)
    for (auto w : pr.adjacency[u])
      if (u < w) edges.push_back({u, w});
  out = dump({{"nodes", nodes}, {"edges", edges}});
  return kOk;
}

inline int blowup_cmd(const Globals& g, const std::string& path, std::string& out) {
  auto in = parse_blowup(read_file(path));
  const auto& X = in.X;
  const auto& x = X.graph();
  auto table = simplex_table(x);
  auto classes = simplex_classes(table);
  bool lemma = true;
  try {
    require_bounded_links_hypotheses(X);
  } catch (const HypothesisError&) {
    lemma = false;
  }
  auto chain = longest_link_chain(table);
  using J = nlohmann::ordered_json;
  J jv = J::array(), je = J::array(), jm = J::array(), jc = J::array();
  std::string text;
  text += "X: " + std::to_string(x.size()) + " vertices, " + std::to_string(x.edge_count()) + " edges\n";
  for (std::size_t v = 0; v < x.size(); ++v) {
    text += "  " + x.name(v) + " -> " + X.support().name(X.retract(v)) + "\n";
    jv.push_back({{"name", x.name(v)}, {"p", X.support().name(X.retract(v))}});
  }
  text += "edges:";
  for (auto [a, b] : x.edges()) {
    text += " " + x.name(a) + "-" + x.name(b);
    je.push_back({x.name(a), x.name(b)});
  }
  text += "\nmaximal simplices: " + std::to_string(in.W.size()) + "\n";
  for (const auto& m : in.W.maximal()) {
    text += "  " + simplex_text(X, m) + "\n";
    jm.push_back(simplex_text(X, m));
  }
  text += "classes: " + std::to_string(classes.size()) + "\n";
  for (const auto& c : classes) {
    std::string tag = "n/a";
    if (lemma) tag = to_string(classify_simplex_link(X, c.representative).tag);
    text += "  " + simplex_text(X, c.representative) + " link " + vertex_set_text(x, c.link) + " [" + tag + "]\n";
    jc.push_back({{"representative", simplex_text(X, c.representative)},
                  {"link", vertex_set_text(x, c.link)},
                  {"saturation", vertex_set_text(x, c.saturation)},
                  {"tag", tag}});
  }
  text += "longest link chain: " + std::to_string(chain.length) + "\n";
  out = g.json ? dump({{"vertices", jv},
                       {"edges", je},
                       {"maximal_simplices", jm},
                       {"classes", jc},
                       {"longest_link_chain", chain.length}})
               : text;
  return kOk;
}

inline int chhs_cmd(const Globals& g, const std::string& path, const std::string& delta,
                    std::size_t complexity, std::string& out) {
  auto in = parse_blowup(read_file(path));
  Rational d;
  try {
    d = parse_rational(delta);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--delta: ") + e.what());
  }
  auto r = chhs_check(in.X.graph(), in.W, d, complexity, g.jobs);
  out = g.json ? dump(to_json(in.X.graph(), r)) : to_text(in.X.graph(), r);
  return r.passed() ? kOk : kUnknown;
}

inline int projection_cmd(const Globals& g, const std::string& path, bool rotating,
                          const std::string& bgi, std::string& out) {
  auto data = parse_projection_data(read_file(path));
  auto r = rotating ? crf_check(data) : cps_check(data.cps);
  if (!bgi.empty()) {
    Rational c;
    try {
      c = parse_rational(bgi);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--bgi-constant: ") + e.what());
    }
    r.axioms.push_back(strong_bgi_check(data, c));
  }
  out = g.json ? dump(to_json(r)) : to_text(r);
  return r.passed() ? kOk : kUnknown;
}

struct PresentOptions {
  bool artin = false, shephard = false, hyperbolic = false, abelianization = false;
  std::string kernel;
  int N = 0;
};

inline int present_cmd(const Globals& g, const std::string& path, const PresentOptions& o, std::string& out) {
  int modes = o.artin + o.shephard + o.hyperbolic + !o.kernel.empty();
  if (modes > 1) throw UsageError("choose one of --artin, --shephard, --hyperbolic-quotient, --kernel");
  if ((o.shephard || o.hyperbolic) && o.N < 1) throw UsageError("--N >= 1 is required");
  auto graph = parse_graph(read_file(path));
  Presentation p;
  if (o.shephard)
    p = shephard_presentation(graph, o.N);
  else if (o.hyperbolic)
    p = hyperbolic_quotient_presentation(graph, o.N);
  else if (!o.kernel.empty())
    p = kernel_presentation(graph, parse_kernel_spec(graph, read_file(o.kernel)));
  else
    p = artin_presentation(graph);
  if (g.json) {
    auto j = to_json(p);
    if (o.abelianization) j["abelianization"] = to_string(abelianization(p));
    out = dump(j);
  } else {
    out = to_text(p);
    if (o.abelianization) out += "# abelianization: " + to_string(abelianization(p)) + "\n";
  }
  return kOk;
}

inline int random_cmd(const Globals& g, const std::string& path, std::string& out) {
  auto cfg = parse_sweep(read_file(path));
  if (g.seed) cfg.seed = *g.seed;
  auto rows = run_sweep(cfg, g.jobs);
  if (g.json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) j.push_back(to_json(r));
    out = dump(j);
  } else {
    out = to_csv(rows);
  }
  return kOk;
}

inline int delta_cmd(const Globals& g, const std::string& path, bool blowup, std::string& out) {
  auto text = read_file(path);
  SimpleGraph graph;
  if (blowup) {
    auto in = parse_blowup(text);
    graph = augmented_graph(in.X.graph(), in.W);
  } else {
    graph = parse_graph(text).to_simple();
  }
  auto d = hyperbolicity_delta(graph, g.jobs);
  auto comps = components(graph, graph.all()).size();
  if (g.json)
    out = dump({{"vertices", graph.size()}, {"components", comps}, {"delta", to_string(d)}});
  else
    out = "vertices: " + std::to_string(graph.size()) + "\ncomponents: " + std::to_string(comps) +
          "\ndelta: " + to_string(d) + "\n";
  return kOk;
}

}  // namespace detail

/// `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Artin group classification, blowup HHS checks, presentations and random models", "artin-cli"};
  app.require_subcommand(1);
  detail::Globals g;
  std::uint64_t seed_value = 0;
  app.add_flag("--json", g.json, "emit JSON");
  app.add_option("--out", g.out_path, "write the report to this file");
  auto* seed_opt = app.add_option("--seed", seed_value, "override the random seed");
  app.add_option("--jobs", g.jobs, "worker threads (output does not depend on it)")->check(CLI::Range(1u, 1024u));

  std::string input;
  std::function<int(std::string&)> action;

  auto* classify = app.add_subcommand("classify", "type flags, odd components and the Hopf verdict");
  classify->add_option("graph", input, "graph file")->required();
  classify->callback([&] { action = [&](std::string& o) { return detail::classify_cmd(g, input, o); }; });

  auto* pr = app.add_subcommand("pr-graph", "product region graph as DOT");
  pr->add_option("graph", input, "graph file")->required();
  pr->callback([&] { action = [&](std::string& o) { return detail::pr_graph_cmd(g, input, o); }; });

  auto* blowup = app.add_subcommand("blowup", "blowup complex, simplex classes and link cases");
  blowup->add_option("file", input, "blowup file")->required();
  blowup->callback([&] { action = [&](std::string& o) { return detail::blowup_cmd(g, input, o); }; });

  std::string delta_text = "1";
  std::size_t complexity = 25;
  auto* chhs = app.add_subcommand("chhs-check", "combinatorial HHS axioms on a blowup with an X-graph");
  chhs->add_option("file", input, "blowup file")->required();
  chhs->add_option("--delta", delta_text, "hyperbolicity constant (p/q)");
  chhs->add_option("--complexity", complexity, "chain length bound");
  chhs->callback(
      [&] { action = [&](std::string& o) { return detail::chhs_cmd(g, input, delta_text, complexity, o); }; });

  std::string bgi;
  auto* cps = app.add_subcommand("cps-check", "composite projection system axioms");
  cps->add_option("file", input, "projection data file")->required();
  cps->add_option("--bgi-constant", bgi, "also check strong bounded geodesic image with this C");
  cps->callback([&] { action = [&](std::string& o) { return detail::projection_cmd(g, input, false, bgi, o); }; });

  auto* crf = app.add_subcommand("crf-check", "composite rotating family axioms");
  crf->add_option("file", input, "projection data file")->required();
  crf->add_option("--bgi-constant", bgi, "also check strong bounded geodesic image with this C");
  crf->callback([&] { action = [&](std::string& o) { return detail::projection_cmd(g, input, true, bgi, o); }; });

  detail::PresentOptions po;
  auto* present = app.add_subcommand("present", "emit a presentation");
  present->add_option("graph", input, "graph file")->required();
  present->add_flag("--artin", po.artin, "Artin group (default)");
  present->add_flag("--shephard", po.shephard, "Shephard quotient, c^N per generator");
  present->add_flag("--hyperbolic-quotient", po.hyperbolic, "adds (ab)^{mN} per edge as well");
  present->add_option("--kernel", po.kernel, "kernel base file");
  present->add_option("--N", po.N, "exponent N");
  present->add_flag("--abelianization", po.abelianization, "append the abelianisation");
  present->callback([&] { action = [&](std::string& o) { return detail::present_cmd(g, input, po, o); }; });

  auto* random = app.add_subcommand("random", "Monte Carlo sweep, CSV output");
  random->add_option("sweep", input, "sweep file")->required();
  random->callback([&] { action = [&](std::string& o) { return detail::random_cmd(g, input, o); }; });

  bool delta_blowup = false;
  auto* delta = app.add_subcommand("delta", "four-point hyperbolicity constant");
  delta->add_option("file", input, "graph file")->required();
  delta->add_flag("--blowup", delta_blowup, "input is a blowup file; use X augmented by W");
  delta->callback([&] { action = [&](std::string& o) { return detail::delta_cmd(g, input, delta_blowup, o); }; });

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }
  if (seed_opt->count() > 0) g.seed = seed_value;

  std::string report;
  int code = kOk;
  try {
    code = action(report);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const HypothesisError& e) {
    err << "hypothesis error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  if (!g.out_path.empty()) {
    std::ofstream file(g.out_path, std::ios::binary);
    if (!file) {
      err << "usage error: cannot write '" << g.out_path << "'\n";
      return kUsage;
    }
    file << report;
  } else {
    out << report;
  }
  return code;
}

}  // namespace artin::cli
