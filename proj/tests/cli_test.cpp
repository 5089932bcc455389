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


#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "lcsolve/cli.hpp"
#include "lcsolve/graph.hpp"
#include "lcsolve/treedec.hpp"

using namespace lcs;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
  json Json() const { return json::parse(out); }
};

Run Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lcsolve");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int serial = 0;
    dir_ = fs::temp_directory_path() /
           ("lcsolve_cli_" + std::to_string(::getpid()) + "_" + std::to_string(serial++));
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& body) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string Graph(const std::string& name, const LabeledGraph& g) const {
    std::ostringstream s;
    write_gr(s, g);
    return Write(name, s.str());
  }
  std::string Td(const std::string& name, const TreeDecomposition& td, int n) const {
    std::ostringstream s;
    write_td(s, td, n);
    return Write(name, s.str());
  }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("cli: solve and oracle agree") {
  TempDir t;
  const std::string g = t.Graph("c6.gr", cycle_graph(6));
  for (const char* p : {"dominating-set", "independent-set", "roman-domination"}) {
    const Run a = Cli({"solve", "--graph", g, "--problem", p});
    const Run b = Cli({"oracle", "--graph", g, "--problem", p});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.Json()["optimum"] == b.Json()["optimum"]);
    CHECK(b.Json()["width"].is_null());
  }
  CHECK(Cli({"solve", "--graph", g, "--problem", "dominating-set"}).Json()["optimum"] == 2);
}

TEST_CASE("cli: output keys are sorted") {
  TempDir t;
  const std::string g = t.Graph("p4.gr", path_graph(4));
  const Run r = Cli({"solve", "--graph", g, "--problem", "dominating-set", "--witness"});
  REQUIRE(r.code == 0);
  const json j = r.Json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  size_t last = 0;
  for (const auto& k : keys) {
    const size_t at = r.out.find("\"" + k + "\"");
    CHECK(at >= last);
    last = at;
  }
  CHECK(r.out.back() == '\n');
}

TEST_CASE("cli: witness is a valid optimal coloring") {
  TempDir t;
  const LabeledGraph p5 = path_graph(5);
  const std::string g = t.Graph("p5.gr", p5);
  const json j = Cli({"solve", "--graph", g, "--problem", "dominating-set", "--witness"}).Json();
  REQUIRE(j["witness"].size() == 5);
  int chosen = 0;
  std::vector<bool> in(5);
  for (int v = 0; v < 5; ++v) {
    const std::string c = j["witness"][v];
    in[v] = c != "0";
    chosen += in[v];
  }
  CHECK(chosen == j["optimum"]);
  for (int v = 0; v < 5; ++v) {
    bool dom = in[v];
    for (Vertex u : p5.neighbors(v)) dom = dom || in[u];
    CHECK(dom);
  }
  const json o = Cli({"oracle", "--graph", g, "--problem", "dominating-set", "--witness"}).Json();
  CHECK(o["witness"].size() == 5);
  CHECK(!Cli({"solve", "--graph", g, "--problem", "dominating-set"}).Json().contains("witness"));
}

TEST_CASE("cli: params, constraints and decompositions") {
  TempDir t;
  const LabeledGraph c6 = cycle_graph(6);
  const std::string g = t.Graph("c6.gr", c6);
  const std::string params = t.Write("k.json", R"({"k": 2})");
  CHECK(Cli({"solve", "--graph", g, "--problem", "k-domination", "--params", "@" + params})
            .Json()["optimum"] == 3);
  CHECK(Cli({"solve", "--graph", g, "--problem", "independent-set", "--constraints",
             R"({"size": {"colors": ["1"], "in": [2]}})"})
            .Json()["optimum"] == 2);
  const std::string td = t.Td("c6.td", heuristic_decomposition(c6), 6);
  const json j = Cli({"solve", "--graph", g, "--td", td, "--problem", "dominating-set"}).Json();
  CHECK(j["optimum"] == 2);
  CHECK(j["width"] == 2);
  CHECK(Cli({"solve", "--graph", g, "--problem", "dominating-set", "--max-width", "1"}).code == 2);
  CHECK(Cli({"solve", "--graph", g, "--problem", "dominating-set", "--threads", "4"})
            .Json()["optimum"] == 2);
}

TEST_CASE("cli: dsl problems") {
  TempDir t;
  const std::string g = t.Graph("p4.gr", path_graph(4));
  const std::string src = t.Write(
      "roman.lcs",
      "colors: 0..2; algebra: min-plus; cost: c(v);\n"
      "check: c(v)=0 -> count(u in N(v) | c(u)=2) >= 1;\n");
  CHECK(Cli({"solve", "--graph", g, "--dsl", src}).Json()["optimum"] == 3);
  CHECK(Cli({"oracle", "--graph", g, "--dsl", src}).Json()["optimum"] == 3);
  CHECK(Cli({"solve", "--graph", g, "--dsl", src, "--problem", "dominating-set"}).code == 2);
  const std::string bad = t.Write("bad.lcs", "colors: 0..1; algebra: min-plus; cost: c(v); check: ;");
  const Run r = Cli({"solve", "--graph", g, "--dsl", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("cli: infeasible instances") {
  TempDir t;
  const std::string g = t.Graph("k3.gr", complete_graph(3));
  const std::vector<std::string> base = {"solve", "--graph", g, "--problem", "k-coloring",
                                         "--params", R"({"k": 2})"};
  const Run r = Cli(base);
  CHECK(r.code == 0);
  CHECK(r.Json()["optimum"] == "ERROR");
  auto strict = base;
  strict.push_back("--fail-on-error");
  CHECK(Cli(strict).code == 1);
  auto with_witness = base;
  with_witness.push_back("--witness");
  CHECK(!Cli(with_witness).Json().contains("witness"));
}

TEST_CASE("cli: complete-flow engine") {
  TempDir t;
  const std::string g = t.Graph("k5.gr", complete_graph(5));
  for (const char* p : {"dominating-set", "k-domination", "roman-domination"}) {
    const std::vector<std::string> extra = std::string(p) == "k-domination"
                                               ? std::vector<std::string>{"--params", R"({"k": 2})"}
                                               : std::vector<std::string>{};
    std::vector<std::string> a = {"solve", "--graph", g, "--problem", p, "--engine", "complete-flow"};
    std::vector<std::string> b = {"solve", "--graph", g, "--problem", p};
    a.insert(a.end(), extra.begin(), extra.end());
    b.insert(b.end(), extra.begin(), extra.end());
    const Run ra = Cli(a);
    REQUIRE(ra.code == 0);
    CHECK(ra.Json()["optimum"] == Cli(b).Json()["optimum"]);
  }
  const std::string p4 = t.Graph("p4.gr", path_graph(4));
  CHECK(Cli({"solve", "--graph", p4, "--problem", "dominating-set", "--engine", "complete-flow"})
            .code == 2);
}

TEST_CASE("cli: validate") {
  TempDir t;
  const LabeledGraph c5 = cycle_graph(5);
  const std::string g = t.Graph("c5.gr", c5);
  const Run ok = Cli({"validate", "--graph", g, "--td", t.Td("good.td", heuristic_decomposition(c5), 5)});
  CHECK(ok.code == 0);
  CHECK(ok.Json()["valid"] == true);
  CHECK(ok.Json()["width"] == 2);
  // A path decomposition misses the closing edge.
  const Run bad = Cli({"validate", "--graph", g, "--td", t.Td("bad.td", path_decomposition(5), 5)});
  CHECK(bad.code == 1);
  CHECK(bad.Json()["valid"] == false);
  CHECK(bad.Json()["violation"] == "W2");
  CHECK(Cli({"solve", "--graph", g, "--td", t.Path("bad.td"), "--problem", "dominating-set"}).code ==
        2);
}

TEST_CASE("cli: transform") {
  TempDir t;
  const LabeledGraph p4 = path_graph(4);
  const std::string g = t.Graph("p4.gr", p4);
  const Run sq = Cli({"transform", "--graph", g, "--kind", "power", "--p", "2"});
  REQUIRE(sq.code == 0);
  std::istringstream in(sq.out);
  CHECK(read_gr(in).size() == 5);
  const std::string out = t.Path("sub.gr");
  const std::string td_out = t.Path("sub.td");
  const Run sub = Cli({"transform", "--graph", g, "--kind", "subdivision", "--output", out, "--td",
                       t.Td("p4.td", path_decomposition(4), 4), "--td-out", td_out});
  REQUIRE(sub.code == 0);
  const LabeledGraph s = read_gr_file(out);
  CHECK(s.order() == 7);
  const ValidationReport rep = validate_decomposition(s, read_td_file(td_out));
  CHECK(rep.ok);
  CHECK(rep.width <= 2);
  const Run jag = Cli({"transform", "--graph", g, "--kind", "jagged"});
  std::istringstream jin(jag.out);
  const LabeledGraph j = read_gr(jin);
  CHECK(j.order() == 4 + 3);
  CHECK(j.size() == 3 * 3);
}

TEST_CASE("cli: bench") {
  const Run r = Cli({"bench", "--sizes", "10,20", "--repeat", "1"});
  REQUIRE(r.code == 0);
  const json j = r.Json();
  REQUIRE(j.size() == 2);
  CHECK(j[0]["optimum"] == 4);
  CHECK(j[1]["optimum"] == 7);
}

TEST_CASE("cli: usage and input errors exit 2") {
  TempDir t;
  const std::string g = t.Graph("p3.gr", path_graph(3));
  CHECK(Cli({}).code == 2);
  CHECK(Cli({"--help"}).code == 0);
  CHECK(Cli({"frobnicate"}).code == 2);
  CHECK(Cli({"solve", "--problem", "dominating-set"}).code == 2);
  CHECK(Cli({"solve", "--graph", t.Path("missing.gr"), "--problem", "dominating-set"}).code == 2);
  CHECK(Cli({"solve", "--graph", g, "--problem", "no-such-problem"}).code == 2);
  CHECK(Cli({"solve", "--graph", g, "--problem", "k-domination", "--params", "{k:"}).code == 2);
  CHECK(Cli({"solve", "--graph", g, "--problem", "k-domination", "--params", R"({"k": -1})"}).code ==
        2);
  CHECK(Cli({"solve", "--graph", g, "--problem", "dominating-set", "--engine", "magic"}).code == 2);
  CHECK(Cli({"solve", "--graph", t.Write("junk.gr", "p tw x\n"), "--problem", "dominating-set"})
            .code == 2);
  CHECK(Cli({"oracle", "--graph", t.Graph("c8.gr", cycle_graph(8)), "--problem", "dominating-set",
             "--budget", "10"})
            .code == 2);
}
