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


#include <random>

#include "doctest.h"
#include "lcsolve/catalog.hpp"
#include "lcsolve/error.hpp"
#include "lcsolve/oracle.hpp"
#include "support.hpp"

using namespace lcs;
using json = nlohmann::json;

namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const LcsError& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kInvalidInput;
}

}  // namespace

TEST_CASE("brute force: examples") {
  CHECK(brute_force_solve(*instantiate("dominating-set", json::object(), path_graph(4)).instance).optimum ==
        Weight::Of(2));
  CHECK(brute_force_solve(*instantiate("k-coloring", {{"k", 3}}, complete_graph(4)).instance).optimum.error);
  const ProblemBundle is = instantiate("independent-set", json::object(), complete_graph(1));
  CHECK(is.instance->algebra.kind() == AlgebraKind::kMaxPlus);
  CHECK(brute_force_solve(*is.instance).optimum == Weight::Of(1));
}

TEST_CASE("brute force: collected co-optima are proper and optimal") {
  const ProblemBundle b = instantiate("dominating-set", json::object(), cycle_graph(6));
  OracleOptions o;
  o.collect = true;
  const OracleResult r = brute_force_solve(*b.instance, {}, o);
  CHECK(r.optimum == Weight::Of(2));
  CHECK(r.enumerated == 64);
  // Antipodal pairs of C6.
  CHECK(r.optimal.size() == 3);
  for (const auto& c : r.optimal) {
    CHECK(is_proper(*b.instance, c));
    CHECK(coloring_weight(*b.instance, c) == r.optimum);
  }
}

TEST_CASE("brute force: budget") {
  const ProblemBundle b = instantiate("roman-domination", json::object(), path_graph(12));
  OracleOptions o;
  o.budget = 1000;
  CHECK(CodeOf([&] { brute_force_solve(*b.instance, {}, o); }) == ErrorCode::kBudgetExceeded);
}

TEST_CASE("brute force: radius is evaluated on true balls") {
  // Radius-2 instance and its power reduction agree on every coloring.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const LabeledGraph g = testing::RandomGraph(rng, 2 + static_cast<int>(rng() % 7), 3, 50);
    const ProblemBundle b = instantiate("distance-domination", {{"k", 2}, {"route", "power"}}, g);
    REQUIRE(b.instance->radius == 2);
    CHECK(brute_force_solve(*b.instance).optimum == native_optimum("distance-domination", {{"k", 2}}, g));
    const int n = g.order();
    for (uint32_t m = 0; m < (1u << n); ++m) {
      std::vector<Color> c(n);
      for (int v = 0; v < n; ++v) c[v] = b.instance->color_by_name(m >> v & 1 ? "1" : "0");
      CHECK(is_proper(*b.instance, c) == is_proper(*b.reduced, c));
    }
  }
}

TEST_CASE("satisfies_constraints: direct checks") {
  const ProblemBundle b = instantiate("dominating-set", json::object(), path_graph(5));
  const Color one = b.instance->color_by_name("1"), zero = b.instance->color_by_name("0");
  const std::vector<Color> split{one, zero, one, zero, one};
  const std::vector<Color> run{zero, one, one, one, zero};
  CHECK_FALSE(satisfies_constraints(*b.instance, split, {connected_constraint({one})}));
  CHECK(satisfies_constraints(*b.instance, run, {connected_constraint({one})}));
  CHECK(satisfies_constraints(*b.instance, std::vector<Color>(5, zero), {connected_constraint({one})}));
  SizeSpec three;
  three.kind = SizeSpec::Kind::kFinite;
  three.values = {3};
  CHECK(satisfies_constraints(*b.instance, split, {size_constraint({one}, three)}));
  CHECK_FALSE(satisfies_constraints(*b.instance, std::vector<Color>(5, one), {size_constraint({one}, three)}));
  const ProblemBundle c = instantiate("dominating-set", json::object(), cycle_graph(4));
  CHECK_FALSE(satisfies_constraints(*c.instance, std::vector<Color>(4, one), {acyclic_constraint({one})}));
  CHECK(satisfies_constraints(*c.instance, {one, one, one, zero}, {acyclic_constraint({one})}));
}

TEST_CASE("Grundy sequences: examples") {
  CHECK(brute_force_grundy(path_graph(3), false) == Weight::Of(2));
  CHECK(brute_force_grundy(complete_graph(1), false) == Weight::Of(1));
  CHECK(brute_force_grundy(complete_graph(3), false) == Weight::Of(1));
  CHECK(brute_force_grundy(path_graph(2), true) == Weight::Of(2));
  CHECK(brute_force_grundy(path_graph(4), false) == Weight::Of(3));
  CHECK(brute_force_grundy(complete_graph(1), true).error);
  CHECK(CodeOf([] { brute_force_grundy(path_graph(11), false); }) == ErrorCode::kBudgetExceeded);
}

TEST_CASE("native optimum: known values") {
  CHECK(native_optimum("dominating-set", json::object(), cycle_graph(7)) == Weight::Of(3));
  CHECK(native_optimum("independent-set", json::object(), cycle_graph(7)) == Weight::Of(3));
  CHECK(native_optimum("k-coloring", {{"k", 4}}, cycle_graph(7)) == Weight::Of(3));
  CHECK(native_optimum("matching", json::object(), path_graph(5)) == Weight::Of(2));
  CHECK(native_optimum("vertex-cover", json::object(), complete_graph(4)) == Weight::Of(3));
  CHECK(native_optimum("edge-cover", json::object(), path_graph(5)) == Weight::Of(3));
  CHECK(native_optimum("roman-domination", json::object(), star_graph(4)) == Weight::Of(2));
  CHECK(native_optimum("total-domination", json::object(), path_graph(6)) == Weight::Of(4));
  CHECK(native_optimum("k-chromatic-sum", {{"k", 3}}, complete_graph(3)) == Weight::Of(6));
}
