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

#ifndef CMABT_CASCADE_H_
#define CMABT_CASCADE_H_

#include <span>
#include <string_view>
#include <vector>

#include "cmabt/environment.h"

namespace cmabt {

enum class CascadeMode { kDisjunctive, kConjunctive };

std::string_view ToString(CascadeMode mode);

struct CascadeInstance {
  std::vector<double> means;  // one per item / path
  int list_length = 1;        // K
  CascadeMode mode = CascadeMode::kDisjunctive;
};

// Expected reward of a list given the means of its items in list order:
// disjunctive 1 - prod(1 - mu_j), conjunctive prod(mu_j).
double CascadeExpectedReward(CascadeMode mode,
                             std::span<const double> list_means);

// Probability that the item at 0-based `position` is examined: the product
// of (1 - mu_j) (disjunctive) or mu_j (conjunctive) over earlier positions.
double CascadeTriggeringProb(CascadeMode mode,
                             std::span<const double> list_means,
                             std::size_t position);

// Examines items in list order until the first 1 (disjunctive) or the first
// 0 (conjunctive). The examined prefix is triggered.
class CascadeEnvironment final : public Environment {
 public:
  explicit CascadeEnvironment(CascadeInstance instance);

  const CascadeInstance& instance() const { return instance_; }
  CascadeMode mode() const { return instance_.mode; }

  std::string_view Kind() const override;
  int NumArms() const override;
  const std::vector<double>& TrueMeans() const override;
  ActionShape Shape() const override { return ActionShape::kRankedList; }
  int ActionSize() const override { return instance_.list_length; }
  int GroundSize() const override { return NumArms(); }
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
  int BatchSize() const override { return instance_.list_length; }
  Action RandomAction(Rng& rng) const override;
  Action MakeAction(std::vector<int> elements) const override;
  // Unobserved items first, then the rest, each group by ascending index.
  Action CoverUnobserved(std::span<const std::int64_t> counts) const override;

 private:
  const std::vector<int>& ListOf(const Action& action) const;

  CascadeInstance instance_;
};

}  // namespace cmabt

#endif  // CMABT_CASCADE_H_
