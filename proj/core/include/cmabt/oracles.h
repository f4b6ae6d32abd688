// Copyright 2026 The Authors.
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

#ifndef CMABT_ORACLES_H_
#define CMABT_ORACLES_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "cmabt/dag_im.h"
#include "cmabt/environment.h"
#include "cmabt/types.h"

namespace cmabt {

enum class OracleKind { kEnumeration, kTopK, kGreedySubmodular, kMcGreedyIm };

std::string_view ToString(OracleKind kind);
OracleKind ParseOracleKind(std::string_view name);  // throws ConfigError

// An (alpha, beta)-approximation maximizer.
struct OracleSpec {
  OracleKind kind = OracleKind::kEnumeration;
  double alpha = 1.0;
  double beta = 1.0;
  int n_sim = 1000;  // Monte-Carlo samples per spread estimate

  static OracleSpec Enumeration();
  static OracleSpec TopK();
  static OracleSpec GreedySubmodular();  // (1 - 1/e, 1)
  // (1 - 1/e, 1/|V|); the epsilon loss from sampling is not modeled.
  static OracleSpec McGreedyIm(int n_sim, int num_nodes);
};

using ActionValueFn = std::function<double(const Action&)>;
using SetValueFn = std::function<double(std::span<const int>)>;

// Exact argmax over `actions`; ties go to the lexicographically smallest
// payload. Throws OracleError on an empty action list.
Action EnumerateOracle(std::span<const Action> actions,
                       const ActionValueFn& value);

// The k largest values in descending order, ties to the lower index.
// Throws std::invalid_argument if k > values.size().
RankedList TopKOracle(std::span<const double> values, int k);

// Lazy greedy maximization of a monotone submodular set function under a
// cardinality constraint. `value` receives sorted sets. Each round inserts
// the element with the largest marginal gain (lowest element on ties).
// Returns the chosen set sorted ascending.
std::vector<int> GreedySubmodular(std::span<const int> ground, int k,
                                  const SetValueFn& value);

// Greedy seed selection with spreads estimated on n_sim live-edge graphs
// drawn once per call from `seed`; every candidate is scored on the same
// samples. Returns sorted seeds.
std::vector<int> McGreedyIm(const DagImInstance& dag, int k,
                            std::span<const double> edge_probs, int n_sim,
                            std::uint64_t seed);

// Maximizes r(S; arm_values) over the environment's action space with the
// given oracle. `seed` feeds Monte-Carlo oracles only.
Action SolveForArmValues(const Environment& env, const OracleSpec& spec,
                         std::span<const double> arm_values,
                         std::uint64_t seed);

// Maximizes an arbitrary action value. kEnumeration scans `actions` (which
// must be non-null); kGreedySubmodular runs greedy over the ground set.
Action SolveForActionValues(const Environment& env, const OracleSpec& spec,
                            const std::vector<Action>* actions,
                            const ActionValueFn& value);

}  // namespace cmabt

#endif  // CMABT_ORACLES_H_
