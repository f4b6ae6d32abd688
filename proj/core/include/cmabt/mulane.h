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

#ifndef CMABT_MULANE_H_
#define CMABT_MULANE_H_

#include <span>
#include <vector>

#include "cmabt/environment.h"

namespace cmabt {

// Multi-layered network exploration with a tabulated visiting probability
// x_{i,u}(b): the chance that explorer i reaches target u when given b
// budget units. Targets carry Bernoulli weights with means y_u.
//
// Arm layout: visit arm (i, u, b) for b = 0..B has index
// (i * |V| + u) * (B + 1) + b; weight arm u follows at n * |V| * (B + 1) + u.
struct MulaneInstance {
  int layers = 0;   // n
  int targets = 0;  // |V|
  int budget = 0;   // B
  std::vector<double> visit_prob;    // n * |V| * (B + 1), index as above
  std::vector<double> weight_means;  // |V|

  int VisitArm(int layer, int target, int b) const {
    return (layer * targets + target) * (budget + 1) + b;
  }
  int WeightArm(int target) const {
    return layers * targets * (budget + 1) + target;
  }
  int NumArms() const { return WeightArm(0) + targets; }
};

// sum_u y_u (1 - prod_i (1 - x_{i,u}(k_i))) with x and y read from `means`.
double MulaneExpectedReward(const MulaneInstance& instance,
                            std::span<const int> budgets,
                            std::span<const double> means);

// Each layer's visit arms at its allocated budget are always triggered.
// The weight arm of a target is triggered iff some explorer visits it, and
// the reward sums the sampled weights of visited targets.
class MulaneEnvironment final : public Environment {
 public:
  // Throws ConfigError if the table is not non-decreasing in b or any value
  // leaves [0, 1].
  explicit MulaneEnvironment(MulaneInstance instance);

  const MulaneInstance& instance() const { return instance_; }

  std::string_view Kind() const override { return "mulane"; }
  int NumArms() const override { return instance_.NumArms(); }
  const std::vector<double>& TrueMeans() const override { return means_; }
  ActionShape Shape() const override { return ActionShape::kBudgetAllocation; }
  int ActionSize() const override { return instance_.budget; }
  int GroundSize() const override { return instance_.layers; }
  bool IsFeasible(const Action& action) const override;
  RoundFeedback Play(const Action& action, Rng& rng) const override;
  double ExpectedReward(const Action& action,
                        std::span<const double> means) const override;
  std::vector<double> TriggeringProbs(
      const Action& action, std::span<const double> means) const override;
  std::vector<int> ActionArms(const Action& action) const override;
  double LogActionCount() const override;
  std::optional<std::vector<Action>> EnumerateActions(
      std::size_t limit = kEnumerationLimit) const override;
  int BatchSize() const override;
  Action RandomAction(Rng& rng) const override;
  Action MakeAction(std::vector<int> elements) const override;

 private:
  const std::vector<int>& BudgetsOf(const Action& action) const;

  MulaneInstance instance_;
  std::vector<double> means_;
};

}  // namespace cmabt

#endif  // CMABT_MULANE_H_
