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

#include "cmabt/cascade.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cmabt/combinatorics.h"
#include "cmabt/errors.h"

namespace cmabt {

std::string_view ToString(CascadeMode mode) {
  return mode == CascadeMode::kDisjunctive ? "disjunctive" : "conjunctive";
}

double CascadeExpectedReward(CascadeMode mode,
                             std::span<const double> list_means) {
  double prod = 1.0;
  if (mode == CascadeMode::kDisjunctive) {
    for (double mu : list_means) prod *= 1.0 - mu;
    return 1.0 - prod;
  }
  for (double mu : list_means) prod *= mu;
  return prod;
}

double CascadeTriggeringProb(CascadeMode mode,
                             std::span<const double> list_means,
                             std::size_t position) {
  if (position >= list_means.size()) return 0.0;
  double prod = 1.0;
  for (std::size_t j = 0; j < position; ++j) {
    prod *= mode == CascadeMode::kDisjunctive ? 1.0 - list_means[j]
                                              : list_means[j];
  }
  return prod;
}

CascadeEnvironment::CascadeEnvironment(CascadeInstance instance)
    : instance_(std::move(instance)) {
  const int m = static_cast<int>(instance_.means.size());
  if (m == 0) throw ConfigError("cascading: no arms");
  if (instance_.list_length < 1 || instance_.list_length > m) {
    throw ConfigError("cascading: K must be in [1, m]");
  }
  for (double mu : instance_.means) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw ConfigError("cascading: means must lie in [0, 1]");
    }
  }
}

std::string_view CascadeEnvironment::Kind() const {
  return instance_.mode == CascadeMode::kDisjunctive ? "cascading_disjunctive"
                                                     : "cascading_conjunctive";
}

int CascadeEnvironment::NumArms() const {
  return static_cast<int>(instance_.means.size());
}

const std::vector<double>& CascadeEnvironment::TrueMeans() const {
  return instance_.means;
}

const std::vector<int>& CascadeEnvironment::ListOf(const Action& action) const {
  const auto* list = std::get_if<RankedList>(&action);
  if (list == nullptr) {
    throw std::invalid_argument("cascading: action must be a ranked list");
  }
  return list->arms;
}

bool CascadeEnvironment::IsFeasible(const Action& action) const {
  const auto* list = std::get_if<RankedList>(&action);
  if (list == nullptr ||
      static_cast<int>(list->arms.size()) != instance_.list_length) {
    return false;
  }
  std::vector<char> seen(NumArms(), 0);
  for (int arm : list->arms) {
    if (arm < 0 || arm >= NumArms() || seen[arm]) return false;
    seen[arm] = 1;
  }
  return true;
}

RoundFeedback CascadeEnvironment::Play(const Action& action, Rng& rng) const {
  if (!IsFeasible(action)) {
    throw std::invalid_argument("cascading: infeasible action " +
                                ToString(action));
  }
  const bool disjunctive = instance_.mode == CascadeMode::kDisjunctive;
  RoundFeedback feedback;
  feedback.reward = disjunctive ? 0.0 : 1.0;
  for (int arm : ListOf(action)) {
    const double x = rng.Bernoulli(instance_.means[arm]) ? 1.0 : 0.0;
    feedback.triggered.push_back({arm, x});
    if (disjunctive && x == 1.0) {
      feedback.reward = 1.0;
      break;
    }
    if (!disjunctive && x == 0.0) {
      feedback.reward = 0.0;
      break;
    }
  }
  return feedback;
}

double CascadeEnvironment::ExpectedReward(const Action& action,
                                          std::span<const double> means) const {
  const auto& arms = ListOf(action);
  double prod = 1.0;
  if (instance_.mode == CascadeMode::kDisjunctive) {
    for (int arm : arms) prod *= 1.0 - means[arm];
    return 1.0 - prod;
  }
  for (int arm : arms) prod *= means[arm];
  return prod;
}

std::vector<double> CascadeEnvironment::TriggeringProbs(
    const Action& action, std::span<const double> means) const {
  std::vector<double> p(NumArms(), 0.0);
  double prefix = 1.0;
  const bool disjunctive = instance_.mode == CascadeMode::kDisjunctive;
  for (int arm : ListOf(action)) {
    p[arm] = prefix;
    prefix *= disjunctive ? 1.0 - means[arm] : means[arm];
  }
  return p;
}

std::vector<int> CascadeEnvironment::ActionArms(const Action& action) const {
  std::vector<int> arms = ListOf(action);
  std::sort(arms.begin(), arms.end());
  return arms;
}

double CascadeEnvironment::LogActionCount() const {
  const int m = NumArms();
  return std::lgamma(m + 1.0) - std::lgamma(m - instance_.list_length + 1.0);
}

std::optional<std::vector<Action>> CascadeEnvironment::EnumerateActions(
    std::size_t limit) const {
  auto lists = Arrangements(NumArms(), instance_.list_length, limit);
  if (!lists) return std::nullopt;
  std::vector<Action> actions;
  actions.reserve(lists->size());
  for (auto& list : *lists) actions.emplace_back(RankedList{std::move(list)});
  return actions;
}

Action CascadeEnvironment::RandomAction(Rng& rng) const {
  std::vector<int> items(NumArms());
  std::iota(items.begin(), items.end(), 0);
  for (int i = 0; i < instance_.list_length; ++i) {
    const auto j = i + static_cast<int>(rng.UniformIndex(items.size() - i));
    std::swap(items[i], items[j]);
  }
  items.resize(instance_.list_length);
  return RankedList{std::move(items)};
}

Action CascadeEnvironment::MakeAction(std::vector<int> elements) const {
  return RankedList{std::move(elements)};
}

Action CascadeEnvironment::CoverUnobserved(
    std::span<const std::int64_t> counts) const {
  std::vector<int> order(NumArms());
  std::iota(order.begin(), order.end(), 0);
  std::stable_partition(order.begin(), order.end(),
                        [&](int i) { return counts[i] == 0; });
  order.resize(instance_.list_length);
  return RankedList{std::move(order)};
}

}  // namespace cmabt
