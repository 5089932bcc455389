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

#ifndef LCSOLVE_ENGINE_HPP_
#define LCSOLVE_ENGINE_HPP_

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lcsolve/globals.hpp"
#include "lcsolve/pns.hpp"
#include "lcsolve/problem.hpp"
#include "lcsolve/treedec.hpp"

namespace lcs {

// Check mode value meaning "use accept"; anything else is an equality target.
constexpr NValue kFinal = std::numeric_limits<NValue>::max();

// Per-constraint extension of a DP state.
struct GlobalState {
  int q = 0;          // automaton state (size constraints)
  int q_target = -1;  // -1: accept via F, else must end in this state
  bool empty = false;        // class must be empty below (connectivity)
  bool target_mode = false;  // component structure below must match label
  std::vector<uint8_t> comp;   // per bag position, 0 when untracked
  std::vector<uint8_t> label;  // target block per bag position, 0 = open

  bool operator==(const GlobalState& o) const = default;
};

// (S, c, omega, eta, check modes) plus global extensions. Indexed by bag
// position; colors are positions in the vertex's list.
struct DPState {
  uint32_t removed = 0;
  uint32_t charged = 0;
  std::vector<int> color;
  std::vector<NValue> acc;
  std::vector<NValue> mode;
  std::vector<GlobalState> globals;

  bool operator==(const DPState& o) const = default;
};

struct SolveOptions {
  bool witness = false;
  bool memoize = true;
  int threads = 1;
  std::ostream* trace = nullptr;
  bool validate_domains = false;
  // Guard on the number of accumulator tuples a join may enumerate.
  uint64_t max_join_tuples = uint64_t{1} << 26;
};

struct SolveStats {
  uint64_t states = 0;
  uint64_t memo_hits = 0;
  uint64_t join_pairs = 0;
  int width = -1;
  int nodes = 0;
};

struct SolveResult {
  Weight optimum;
  std::optional<std::vector<Color>> witness;
  SolveStats stats;
};

// Evaluates lambda over an easy decomposition. One engine per solve; the
// per-node memo tables are reused across calls on the same engine.
class DpEngine {
 public:
  DpEngine(std::shared_ptr<const ProblemInstance> inst,
           std::shared_ptr<const PartialNeighborhoodSystem> pns,
           const EasyTreeDecomposition& etd,
           std::vector<GlobalConstraint> constraints = {},
           SolveOptions options = {});
  ~DpEngine();

  SolveResult Solve();

  // lambda_t of an arbitrary state; children are evaluated as needed.
  Weight Lambda(int node, const DPState& state);
  Weight eval_leaf(int node, const DPState& state);
  Weight eval_forget(int node, const DPState& state);
  Weight eval_introduce(int node, const DPState& state);
  Weight eval_join(int node, const DPState& state);
  // ns(v, c, (G_t - S)[X_t]) for the vertex at bag position pos.
  NValue bag_ns(int node, const DPState& state, int pos) const;

  // State at the root with every vertex charged and checked by accept.
  DPState RootState(int root_color_index) const;
  const EasyTreeDecomposition& decomposition() const;
  std::string DescribeState(int node, const DPState& state) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience wrappers. Throw InvalidInput on radius != 1.
SolveResult solve(std::shared_ptr<const ProblemInstance> inst,
                  std::shared_ptr<const PartialNeighborhoodSystem> pns,
                  const EasyTreeDecomposition& etd,
                  const SolveOptions& options = {});
SolveResult solve_with_globals(
    std::shared_ptr<const ProblemInstance> inst,
    std::shared_ptr<const PartialNeighborhoodSystem> pns,
    const EasyTreeDecomposition& etd,
    const std::vector<GlobalConstraint>& constraints,
    const SolveOptions& options = {});

// Natural log of a rough state count: each bag vertex contributes |L_v|
// times its largest N domain, and one more domain factor while it carries an
// exact target from a join above.
double estimate_log_states(const ProblemInstance& inst,
                           const PartialNeighborhoodSystem& pns,
                           const EasyTreeDecomposition& etd);
// Min-fill decomposition, or the linear one when the estimate favors it.
TreeDecomposition choose_decomposition(const ProblemInstance& inst,
                                       const PartialNeighborhoodSystem& pns);

// The witness of a finished solve. Throws WitnessUnavailable when the
// optimum is Error or the solve ran without witness tracking.
std::vector<Color> extract_witness(const SolveResult& result);

}  // namespace lcs

#endif  // LCSOLVE_ENGINE_HPP_
