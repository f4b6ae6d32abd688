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

#ifndef CMABT_PMC_H_
#define CMABT_PMC_H_

#include <span>
#include <vector>

#include "cmabt/environment.h"

namespace cmabt {

// Probabilistic maximum coverage on a complete bipartite graph. Base arm
// (u, v) has index u * num_targets + v.
struct PmcInstance {
  int num_sources = 0;  // L
  int num_targets = 0;  // |V|
  std::vector<double> edge_means;  // L x |V|, row-major
  int seeds = 1;                   // k

  int ArmIndex(int source, int target) const {
    return source * num_targets + target;
  }
};

// sum_v (1 - prod_{u in S} (1 - mu_{u,v})). `sources` may be any subset.
double PmcExpectedReward(const PmcInstance& instance,
                         std::span<const int> sources,
                         std::span<const double> means);

// Non-triggering: every edge incident to the chosen sources is observed.
// Reward is the number of targets with at least one successful edge.
class PmcEnvironment final : public Environment {
 public:
  explicit PmcEnvironment(PmcInstance instance);

  const PmcInstance& instance() const { return instance_; }

  std::string_view Kind() const override { return "pmc"; }
  int NumArms() const override;
  const std::vector<double>& TrueMeans() const override;
  ActionShape Shape() const override { return ActionShape::kSeedSet; }
  int ActionSize() const override { return instance_.seeds; }
  int GroundSize() const override { return instance_.num_sources; }
  bool IsFeasible(const Action& action) const override;
  RoundFeedback Play(const Action& action, Rng& rng) const override;
  double ExpectedReward(const Action& action,
                        std::span<const double> means) const override;
  std::vector<double> TriggeringProbs(
      const Action& action, std::span<const double> means) const override;
  bool IsTriggering() const override { return false; }
  std::vector<int> ActionArms(const Action& action) const override;
  double LogActionCount() const override;
  std::optional<std::vector<Action>> EnumerateActions(
      std::size_t limit = kEnumerationLimit) const override;
  int BatchSize() const override;
  Action RandomAction(Rng& rng) const override;
  Action MakeAction(std::vector<int> elements) const override;
  Action CoverUnobserved(std::span<const std::int64_t> counts) const override;

 private:
  const std::vector<int>& SourcesOf(const Action& action) const;

  PmcInstance instance_;
};

}  // namespace cmabt

#endif  // CMABT_PMC_H_
