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

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lcsolve/error.hpp"
#include "lcsolve/graph.hpp"

namespace lcs {

namespace {

[[noreturn]] void Fail(int line, const std::string& msg) {
  throw LcsError(ErrorCode::kParseError,
                 "line " + std::to_string(line) + ": " + msg);
}

int ParseVertex(const std::string& tok, int n, int line) {
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    Fail(line, "expected a vertex id, got '" + tok + "'");
  }
  if (pos != tok.size()) Fail(line, "expected a vertex id, got '" + tok + "'");
  if (v < 1 || v > n) {
    throw LcsError(ErrorCode::kVertexOutOfRange,
                   "line " + std::to_string(line) + ": vertex " + tok);
  }
  return static_cast<int>(v - 1);
}

}  // namespace

LabeledGraph read_gr(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  long m = -1;
  std::vector<EdgeSpec> edges;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string kind;
      if (n >= 0) Fail(lineno, "duplicate header");
      if (!(ss >> kind >> n >> m) || n < 0 || m < 0) {
        Fail(lineno, "malformed header, expected 'p tw <n> <m>'");
      }
      continue;
    }
    if (n < 0) Fail(lineno, "edge before header");
    std::string second;
    if (!(ss >> second)) Fail(lineno, "edge line needs two vertices");
    EdgeSpec e{ParseVertex(tok, n, lineno), ParseVertex(second, n, lineno),
               std::nullopt};
    std::string label;
    if (ss >> label) e.label = label;
    std::string extra;
    if (ss >> extra) Fail(lineno, "trailing token '" + extra + "'");
    edges.push_back(e);
  }
  if (n < 0) Fail(lineno, "missing header");
  if (static_cast<long>(edges.size()) != m) {
    Fail(lineno, "header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  return LabeledGraph::Build(n, edges);
}

LabeledGraph read_gr_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LcsError(ErrorCode::kInvalidInput, "cannot open " + path);
  return read_gr(in);
}

void write_gr(std::ostream& out, const LabeledGraph& g) {
  out << "p tw " << g.order() << " " << g.size() << "\n";
  for (const Edge& e : g.edges()) {
    out << e.u + 1 << " " << e.v + 1;
    if (e.label != LabeledGraph::kDefaultLabel) out << " " << e.label;
    out << "\n";
  }
}

}  // namespace lcs
