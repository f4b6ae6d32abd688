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

#ifndef CMABT_TYPES_H_
#define CMABT_TYPES_H_

#include <compare>
#include <string>
#include <variant>
#include <vector>

namespace cmabt {

// Ordered list of arms (cascading bandits). Position 0 is examined first.
struct RankedList {
  std::vector<int> arms;
  friend auto operator<=>(const RankedList&, const RankedList&) = default;
};

// Unordered set of ground elements, stored sorted ascending (PMC sources,
// influence-maximization seed nodes).
struct SeedSet {
  std::vector<int> nodes;
  friend auto operator<=>(const SeedSet&, const SeedSet&) = default;
};

// Per-layer budget vector (multi-layered network exploration).
struct BudgetAllocation {
  std::vector<int> budgets;
  friend auto operator<=>(const BudgetAllocation&,
                          const BudgetAllocation&) = default;
};

using Action = std::variant<RankedList, SeedSet, BudgetAllocation>;

// The integer payload of any action; lexicographic order on it is the
// tie-break order used by every oracle.
const std::vector<int>& Payload(const Action& action);

std::string ToString(const Action& action);

struct Observation {
  int arm = 0;
  double outcome = 0.0;
  friend bool operator==(const Observation&, const Observation&) = default;
};

// Outcome of one round: the triggered arms with their revealed outcomes (in
// the order they were revealed) and the realized reward.
struct RoundFeedback {
  std::vector<Observation> triggered;
  double reward = 0.0;
  friend bool operator==(const RoundFeedback&, const RoundFeedback&) = default;
};

}  // namespace cmabt

#endif  // CMABT_TYPES_H_
