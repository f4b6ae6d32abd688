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

#ifndef CMABT_ENVIRONMENT_H_
#define CMABT_ENVIRONMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cmabt/rng.h"
#include "cmabt/types.h"

namespace cmabt {

// Upper bound on the number of actions any routine will materialize.
inline constexpr std::size_t kEnumerationLimit = 1'000'000;

enum class ActionShape { kRankedList, kSeedSet, kBudgetAllocation };

// A CMAB-T problem instance: m base arms with unknown means, a feasible
// action space, an outcome sampler with its triggering rule, and the
// expected-reward function r(S; mu).
//
// Instances are immutable after construction. All randomness comes from the
// Rng passed to Play, so one instance may be shared by concurrent workers.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string_view Kind() const = 0;
  virtual int NumArms() const = 0;
  virtual const std::vector<double>& TrueMeans() const = 0;

  virtual ActionShape Shape() const = 0;
  // K for ranked lists, k for seed sets, B for budget allocations.
  virtual int ActionSize() const = 0;
  // Number of ground elements actions are built from (items, sources,
  // nodes, layers).
  virtual int GroundSize() const = 0;

  virtual bool IsFeasible(const Action& action) const = 0;

  // Plays `action` against one fresh outcome vector. Throws
  // std::invalid_argument for an infeasible action.
  virtual RoundFeedback Play(const Action& action, Rng& rng) const = 0;

  // r(S; means). Set-shaped environments accept partial sets (|S| < k) so
  // greedy oracles can evaluate prefixes.
  virtual double ExpectedReward(const Action& action,
                                std::span<const double> means) const = 0;

  // p_i^{D,S} for every arm i under mean vector `means`.
  virtual std::vector<double> TriggeringProbs(
      const Action& action, std::span<const double> means) const = 0;

  double TriggeringProb(const Action& action, std::span<const double> means,
                        int arm) const;

  // False when TriggeringProbs is not a closed form and checkers should use
  // EstimateTriggeringProbs with a statistical tolerance instead.
  virtual bool HasAnalyticTriggering() const { return true; }

  virtual std::vector<double> EstimateTriggeringProbs(
      const Action& action, std::span<const double> means, int n_sim,
      Rng& rng) const;

  // False for the non-triggering (semi-bandit) setting where tau = S.
  virtual bool IsTriggering() const { return true; }

  // Arms that `action` can ever trigger, ascending. For non-triggering
  // environments this is the super arm S itself.
  virtual std::vector<int> ActionArms(const Action& action) const = 0;

  // ln |S|, evaluated without forming |S| when it would overflow.
  virtual double LogActionCount() const = 0;

  // Every feasible action in lexicographic payload order, or nullopt when
  // there are more than `limit`.
  virtual std::optional<std::vector<Action>> EnumerateActions(
      std::size_t limit = kEnumerationLimit) const = 0;

  // K = max over actions of the number of arms with p_i > 0.
  virtual int BatchSize() const = 0;

  virtual Action RandomAction(Rng& rng) const = 0;

  // Builds an action from ground elements; for seed sets the elements are
  // sorted, for ranked lists the order is kept.
  virtual Action MakeAction(std::vector<int> elements) const = 0;

  // Feasible action whose ActionArms contain the most arms with a zero
  // counter; ties go to the lexicographically smallest action. The default
  // scans EnumerateActions and throws OracleError if the space is too large.
  virtual Action CoverUnobserved(std::span<const std::int64_t> counts) const;
};

}  // namespace cmabt

#endif  // CMABT_ENVIRONMENT_H_
