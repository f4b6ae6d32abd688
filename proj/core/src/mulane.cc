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

#include "cmabt/mulane.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cmabt/combinatorics.h"
#include "cmabt/errors.h"

namespace cmabt {
namespace {

bool ValidBudgets(const MulaneInstance& instance, std::span<const int> budgets) {
  if (static_cast<int>(budgets.size()) != instance.layers) return false;
  int total = 0;
  for (int b : budgets) {
    if (b < 0 || b > instance.budget) return false;
    total += b;
  }
  return total == instance.budget;
}

}  // namespace

double MulaneExpectedReward(const MulaneInstance& instance,
                            std::span<const int> budgets,
                            std::span<const double> means) {
  if (!ValidBudgets(instance, budgets)) {
    throw std::invalid_argument("mulane: infeasible budget vector");
  }
  double total = 0.0;
  for (int u = 0; u < instance.targets; ++u) {
    double miss = 1.0;
    for (int i = 0; i < instance.layers; ++i) {
      miss *= 1.0 - means[instance.VisitArm(i, u, budgets[i])];
    }
    total += means[instance.WeightArm(u)] * (1.0 - miss);
  }
  return total;
}

MulaneEnvironment::MulaneEnvironment(MulaneInstance instance)
    : instance_(std::move(instance)) {
  const auto& in = instance_;
  if (in.layers < 1 || in.targets < 1 || in.budget < 0) {
    throw ConfigError("mulane: n and V must be positive, B non-negative");
  }
  if (in.visit_prob.size() !=
      static_cast<std::size_t>(in.layers) * in.targets * (in.budget + 1)) {
    throw ConfigError("mulane: visit_prob must have n * V * (B + 1) entries");
  }
  if (in.weight_means.size() != static_cast<std::size_t>(in.targets)) {
    throw ConfigError("mulane: weight_means must have V entries");
  }
  for (int i = 0; i < in.layers; ++i) {
    for (int u = 0; u < in.targets; ++u) {
      for (int b = 0; b <= in.budget; ++b) {
        const double x = in.visit_prob[in.VisitArm(i, u, b)];
        if (!(x >= 0.0 && x <= 1.0)) {
          throw ConfigError("mulane: visit probabilities must lie in [0, 1]");
        }
        if (b > 0 && x < in.visit_prob[in.VisitArm(i, u, b - 1)]) {
          throw ConfigError("mulane: visit probability of layer " +
                            std::to_string(i) + ", target " +
                            std::to_string(u) + " decreases in budget");
        }
      }
    }
  }
  for (double y : in.weight_means) {
    if (!(y >= 0.0 && y <= 1.0)) {
      throw ConfigError("mulane: weight means must lie in [0, 1]");
    }
  }
  means_ = in.visit_prob;
  means_.insert(means_.end(), in.weight_means.begin(), in.weight_means.end());
}

const std::vector<int>& MulaneEnvironment::BudgetsOf(
    const Action& action) const {
  const auto* alloc = std::get_if<BudgetAllocation>(&action);
  if (alloc == nullptr || !ValidBudgets(instance_, alloc->budgets)) {
    throw std::invalid_argument("mulane: infeasible budget vector " +
                                ToString(action));
  }
  return alloc->budgets;
}

bool MulaneEnvironment::IsFeasible(const Action& action) const {
  const auto* alloc = std::get_if<BudgetAllocation>(&action);
  return alloc != nullptr && ValidBudgets(instance_, alloc->budgets);
}

RoundFeedback MulaneEnvironment::Play(const Action& action, Rng& rng) const {
  const auto& budgets = BudgetsOf(action);
  const auto& in = instance_;
  RoundFeedback feedback;
  std::vector<char> visited(in.targets, 0);
  for (int i = 0; i < in.layers; ++i) {
    for (int u = 0; u < in.targets; ++u) {
      const int arm = in.VisitArm(i, u, budgets[i]);
      const double x = rng.Bernoulli(means_[arm]) ? 1.0 : 0.0;
      feedback.triggered.push_back({arm, x});
      if (x == 1.0) visited[u] = 1;
    }
  }
  for (int u = 0; u < in.targets; ++u) {
    if (!visited[u]) continue;
    const int arm = in.WeightArm(u);
    const double y = rng.Bernoulli(means_[arm]) ? 1.0 : 0.0;
    feedback.triggered.push_back({arm, y});
    feedback.reward += y;
  }
  return feedback;
}

double MulaneEnvironment::ExpectedReward(const Action& action,
                                         std::span<const double> means) const {
  return MulaneExpectedReward(instance_, BudgetsOf(action), means);
}

std::vector<double> MulaneEnvironment::TriggeringProbs(
    const Action& action, std::span<const double> means) const {
  const auto& budgets = BudgetsOf(action);
  const auto& in = instance_;
  std::vector<double> p(NumArms(), 0.0);
  for (int u = 0; u < in.targets; ++u) {
    double miss = 1.0;
    for (int i = 0; i < in.layers; ++i) {
      const int arm = in.VisitArm(i, u, budgets[i]);
      p[arm] = 1.0;
      miss *= 1.0 - means[arm];
    }
    p[in.WeightArm(u)] = 1.0 - miss;
  }
  return p;
}

std::vector<int> MulaneEnvironment::ActionArms(const Action& action) const {
  const auto& budgets = BudgetsOf(action);
  const auto& in = instance_;
  std::vector<int> arms;
  for (int i = 0; i < in.layers; ++i) {
    for (int u = 0; u < in.targets; ++u) {
      arms.push_back(in.VisitArm(i, u, budgets[i]));
    }
  }
  for (int u = 0; u < in.targets; ++u) arms.push_back(in.WeightArm(u));
  return arms;
}

double MulaneEnvironment::LogActionCount() const {
  return LogBinomial(instance_.budget + instance_.layers - 1,
                     instance_.layers - 1);
}

std::optional<std::vector<Action>> MulaneEnvironment::EnumerateActions(
    std::size_t limit) const {
  auto comps = Compositions(instance_.budget, instance_.layers, limit);
  if (!comps) return std::nullopt;
  std::vector<Action> actions;
  actions.reserve(comps->size());
  for (auto& c : *comps) actions.emplace_back(BudgetAllocation{std::move(c)});
  return actions;
}

int MulaneEnvironment::BatchSize() const {
  return (instance_.layers + 1) * instance_.targets;
}

Action MulaneEnvironment::RandomAction(Rng& rng) const {
  // Stars and bars: n - 1 bars among B + n - 1 slots.
  const int n = instance_.layers;
  const int slots = instance_.budget + n - 1;
  std::vector<int> positions(slots);
  std::iota(positions.begin(), positions.end(), 0);
  for (int i = 0; i < n - 1; ++i) {
    const auto j = i + static_cast<int>(rng.UniformIndex(slots - i));
    std::swap(positions[i], positions[j]);
  }
  positions.resize(n - 1);
  std::sort(positions.begin(), positions.end());
  std::vector<int> budgets(n);
  int previous = -1;
  for (int i = 0; i < n - 1; ++i) {
    budgets[i] = positions[i] - previous - 1;
    previous = positions[i];
  }
  budgets[n - 1] = slots - previous - 1;
  return BudgetAllocation{std::move(budgets)};
}

Action MulaneEnvironment::MakeAction(std::vector<int> elements) const {
  return BudgetAllocation{std::move(elements)};
}

}  // namespace cmabt
