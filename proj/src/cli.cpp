// Copyright 2026 The lcsolve Authors
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

#include "lcsolve/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lcsolve/catalog.hpp"
#include "lcsolve/dsl.hpp"
#include "lcsolve/engine.hpp"
#include "lcsolve/error.hpp"
#include "lcsolve/flow.hpp"
#include "lcsolve/oracle.hpp"

namespace lcs {

namespace {

using json = nlohmann::json;

struct RunConfig {
  std::string graph;
  std::string td;
  std::string problem;
  std::string params = "{}";
  std::string dsl;
  std::string engine = "treewidth-dp";
  std::string constraints;
  std::string output;
  bool witness = false;
  bool trace = false;
  bool fail_on_error = false;
  int threads = 1;
  int max_width = -1;
  uint64_t budget = 10'000'000;
};

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LcsError(ErrorCode::kInvalidInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON, or @path.
json JsonArg(const std::string& text, const char* what) {
  const std::string body = !text.empty() && text[0] == '@' ? Slurp(text.substr(1)) : text;
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    throw LcsError(ErrorCode::kParseError, std::string(what) + ": " + e.what());
  }
}

// Everything an engine needs.
struct Loaded {
  LabeledGraph input;
  std::shared_ptr<const ProblemInstance> instance;
  std::shared_ptr<const ProblemInstance> reduced;
  std::shared_ptr<const PartialNeighborhoodSystem> pns;
  std::vector<GlobalConstraint> constraints;
  std::optional<ProblemBundle> bundle;
};

Loaded Load(const RunConfig& cfg) {
  if (cfg.problem.empty() == cfg.dsl.empty()) {
    throw LcsError(ErrorCode::kInvalidInput, "give exactly one of --problem and --dsl");
  }
  Loaded l;
  l.input = read_gr_file(cfg.graph);
  if (!cfg.problem.empty()) {
    ProblemBundle b = instantiate(cfg.problem, JsonArg(cfg.params, "--params"), l.input);
    l.instance = b.instance;
    l.reduced = b.reduced;
    l.pns = b.pns;
    l.constraints = b.constraints;
    l.bundle = std::move(b);
  } else {
    dsl::CompiledProblem cp = dsl::compile_problem(dsl::parse_problem(Slurp(cfg.dsl)), l.input);
    l.instance = l.reduced = cp.instance;
    l.pns = cp.pns;
  }
  if (!cfg.constraints.empty()) {
    for (auto& c : constraints_from_json(JsonArg(cfg.constraints, "--constraints"), *l.instance)) {
      l.constraints.push_back(std::move(c));
    }
    if (static_cast<int>(l.constraints.size()) > kMaxGlobalConstraints) {
      throw LcsError(ErrorCode::kTooManyConstraints, "too many global constraints");
    }
  }
  return l;
}

json WitnessJson(const ProblemInstance& inst, const std::vector<Color>& c) {
  json w = json::array();
  for (Color x : c) w.push_back(inst.color_names[x]);
  return w;
}

json OptimumJson(Weight w) {
  return w.error ? json("ERROR") : json(w.value);
}

struct Outcome {
  json result;
  bool infeasible = false;
};

Outcome RunSolve(const RunConfig& cfg, const std::string& engine, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Loaded l = Load(cfg);
  json out = json::object();
  Weight optimum;
  if (engine == "treewidth-dp") {
    const LabeledGraph& g = l.reduced->graph;
    TreeDecomposition td;
    if (!cfg.td.empty()) {
      const TreeDecomposition given = read_td_file(cfg.td);
      if (l.bundle) {
        td = l.bundle->LiftDecomposition(given);
      } else {
        const ValidationReport rep = validate_decomposition(g, given);
        if (!rep.ok) throw LcsError(ErrorCode::kInvalidInput, rep.message);
        td = given;
      }
    } else {
      td = choose_decomposition(*l.reduced, *l.pns);
    }
    if (cfg.max_width >= 0 && td.width() > cfg.max_width) {
      throw LcsError(ErrorCode::kBudgetExceeded,
                     "decomposition width " + std::to_string(td.width()) +
                         " exceeds --max-width " + std::to_string(cfg.max_width));
    }
    SolveOptions opt;
    opt.witness = cfg.witness;
    opt.threads = cfg.threads;
    if (cfg.trace) opt.trace = &err;
    const SolveResult r =
        solve_with_globals(l.reduced, l.pns, to_easy(g, td), l.constraints, opt);
    optimum = l.bundle ? l.bundle->MapBack(r.optimum) : r.optimum;
    out["width"] = r.stats.width;
    out["nodes"] = r.stats.nodes;
    if (cfg.witness && r.witness) out["witness"] = WitnessJson(*l.reduced, *r.witness);
  } else if (engine == "oracle") {
    OracleOptions opt;
    opt.budget = cfg.budget;
    opt.collect = cfg.witness;
    opt.max_collect = 1;
    const OracleResult r = brute_force_solve(*l.instance, l.constraints, opt);
    optimum = l.bundle ? l.bundle->MapBack(r.optimum) : r.optimum;
    out["width"] = nullptr;
    out["nodes"] = nullptr;
    if (cfg.witness && !r.optimal.empty()) {
      out["witness"] = WitnessJson(*l.instance, r.optimal.front());
    }
  } else if (engine == "complete-flow") {
    if (!l.constraints.empty()) {
      throw LcsError(ErrorCode::kInvalidInput, "the flow engine takes no global constraints");
    }
    if (l.instance->radius != 1) {
      throw LcsError(ErrorCode::kInvalidInput, "the flow engine needs radius 1");
    }
    CompleteFlowOptions opt;
    opt.threads = cfg.threads;
    const CompleteFlowResult r =
        solve_complete_graph(*l.instance, distribution_check_from(*l.instance), opt);
    optimum = l.bundle ? l.bundle->MapBack(r.optimum) : r.optimum;
    out["width"] = nullptr;
    out["nodes"] = nullptr;
    if (cfg.witness && r.assignment) out["witness"] = WitnessJson(*l.instance, *r.assignment);
  } else {
    throw LcsError(ErrorCode::kInvalidInput, "unknown engine '" + engine + "'");
  }
  out["optimum"] = OptimumJson(optimum);
  out["millis"] = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return {out, optimum.error};
}

void Emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump() << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) throw LcsError(ErrorCode::kInvalidInput, "cannot write " + path);
  f << j.dump() << "\n";
}

void AddProblemFlags(CLI::App* sub, RunConfig* cfg, bool with_engine) {
  sub->add_option("--graph", cfg->graph, "graph in .gr format")->required();
  sub->add_option("--td", cfg->td, "tree decomposition in .td format");
  sub->add_option("--problem", cfg->problem, "catalog problem name");
  sub->add_option("--params", cfg->params, "problem parameters as JSON or @file");
  sub->add_option("--dsl", cfg->dsl, "problem definition file");
  if (with_engine) {
    sub->add_option("--engine", cfg->engine, "treewidth-dp, complete-flow or oracle")
        ->check(CLI::IsMember({"treewidth-dp", "complete-flow", "oracle"}));
  }
  sub->add_option("--constraints", cfg->constraints, "global constraints as JSON or @file");
  sub->add_option("--output", cfg->output, "write the result here instead of stdout");
  sub->add_flag("--witness", cfg->witness, "include an optimal coloring");
  sub->add_flag("--trace", cfg->trace, "log DP states to stderr");
  sub->add_flag("--fail-on-error", cfg->fail_on_error, "exit 1 when no proper coloring exists");
  sub->add_option("--threads", cfg->threads, "worker threads")->check(CLI::Range(1, 256));
  sub->add_option("--max-width", cfg->max_width, "refuse decompositions wider than this");
  sub->add_option("--budget", cfg->budget, "oracle enumeration budget");
}

}  // namespace

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"lcsolve: locally checkable problems on bounded treewidth graphs"};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* solve = app.add_subcommand("solve", "solve a problem");
  AddProblemFlags(solve, &cfg, true);
  CLI::App* oracle = app.add_subcommand("oracle", "solve by exhaustive search");
  AddProblemFlags(oracle, &cfg, false);

  CLI::App* validate = app.add_subcommand("validate", "check a tree decomposition");
  validate->add_option("--graph", cfg.graph)->required();
  validate->add_option("--td", cfg.td)->required();

  std::string kind, td_out;
  int power = 2;
  CLI::App* transform = app.add_subcommand("transform", "emit a transformed graph");
  transform->add_option("--graph", cfg.graph)->required();
  transform->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"power", "subdivision", "jagged"}));
  transform->add_option("--p", power, "exponent for power")->check(CLI::Range(1, 64));
  transform->add_option("--td", cfg.td, "decomposition to lift along");
  transform->add_option("--td-out", td_out, "where to write the lifted decomposition");
  transform->add_option("--output", cfg.output, "graph output path");

  std::vector<int> sizes = {1000, 2000, 4000};
  int repeat = 3;
  std::string bench_problem = "dominating-set";
  CLI::App* bench = app.add_subcommand("bench", "time a problem on paths");
  bench->add_option("--problem", bench_problem);
  bench->add_option("--sizes", sizes)->delimiter(',');
  bench->add_option("--repeat", repeat)->check(CLI::Range(1, 100));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, ee;
    const int code = app.exit(e, o, ee);
    out << o.str();
    err << ee.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve->parsed() || oracle->parsed()) {
      const Outcome r = RunSolve(cfg, oracle->parsed() ? "oracle" : cfg.engine, err);
      Emit(r.result, cfg.output, out);
      return r.infeasible && cfg.fail_on_error ? 1 : 0;
    }
    if (validate->parsed()) {
      const LabeledGraph g = read_gr_file(cfg.graph);
      const ValidationReport rep = validate_decomposition(g, read_td_file(cfg.td));
      json j = {{"valid", rep.ok}, {"width", rep.width}};
      if (!rep.ok) {
        j["violation"] = ViolationName(rep.violation);
        j["message"] = rep.message;
      }
      out << j.dump() << "\n";
      return rep.ok ? 0 : 1;
    }
    if (transform->parsed()) {
      const LabeledGraph g = read_gr_file(cfg.graph);
      LabeledGraph h;
      if (kind == "power") {
        h = graph_power(g, power);
      } else {
        h = (kind == "jagged" ? transform_jagged(g) : transform_subdivision(g)).graph;
      }
      std::ostringstream gs;
      write_gr(gs, h);
      if (cfg.output.empty()) {
        out << gs.str();
      } else {
        std::ofstream(cfg.output) << gs.str();
      }
      if (!cfg.td.empty()) {
        const TreeDecomposition td = read_td_file(cfg.td);
        const TreeDecomposition lifted =
            kind == "power" ? lift_power(g, td, power)
                            : lift_edge_transform(g, td,
                                                  kind == "jagged"
                                                      ? EdgeTransformKind::kJagged
                                                      : EdgeTransformKind::kSubdivision);
        std::ostringstream ts;
        write_td(ts, lifted, h.order());
        if (td_out.empty()) {
          err << ts.str();
        } else {
          std::ofstream(td_out) << ts.str();
        }
      }
      return 0;
    }
    if (bench->parsed()) {
      json rows = json::array();
      for (int n : sizes) {
        if (n < 1) throw LcsError(ErrorCode::kInvalidParameter, "sizes must be positive");
        const ProblemBundle b = instantiate(bench_problem, json::object(), path_graph(n));
        std::vector<double> times;
        Weight opt;
        for (int k = 0; k < repeat; ++k) {
          const auto t0 = std::chrono::steady_clock::now();
          opt = solve_problem(b, path_decomposition(n)).optimum;
          times.push_back(std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count());
        }
        std::sort(times.begin(), times.end());
        rows.push_back({{"n", n}, {"optimum", OptimumJson(opt)}, {"millis", times[times.size() / 2]}});
      }
      out << rows.dump() << "\n";
      return 0;
    }
  } catch (const LcsError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace lcs
