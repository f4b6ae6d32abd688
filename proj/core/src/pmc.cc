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

#include "cmabt/pmc.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cmabt/combinatorics.h"
#include "cmabt/errors.h"

namespace cmabt {

double PmcExpectedReward(const PmcInstance& instance,
                         std::span<const int> sources,
                         std::span<const double> means) {
  double total = 0.0;
  for (int v = 0; v < instance.num_targets; ++v) {
    double miss = 1.0;
    for (int u : sources) miss *= 1.0 - means[instance.ArmIndex(u, v)];
    total += 1.0 - miss;
  }
  return total;
}

PmcEnvironment::PmcEnvironment(PmcInstance instance)
    : instance_(std::move(instance)) {
  if (instance_.num_sources < 1 || instance_.num_targets < 1) {
    throw ConfigError("pmc: L and V must be positive");
  }
  if (instance_.seeds < 1 || instance_.seeds > instance_.num_sources) {
    throw ConfigError("pmc: k must be in [1, L]");
  }
  if (instance_.edge_means.size() !=
      static_cast<std::size_t>(instance_.num_sources) * instance_.num_targets) {
    throw ConfigError("pmc: edge_means must have L * V entries");
  }
  for (double mu : instance_.edge_means) {
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw ConfigError("pmc: edge means must lie in [0, 1]");
    }
  }
}

int PmcEnvironment::NumArms() const {
  return instance_.num_sources * instance_.num_targets;
}

const std::vector<double>& PmcEnvironment::TrueMeans() const {
  return instance_.edge_means;
}

const std::vector<int>& PmcEnvironment::SourcesOf(const Action& action) const {
  const auto* set = std::get_if<SeedSet>(&action);
  if (set == nullptr) throw std::invalid_argument("pmc: action must be a set");
  for (int u : set->nodes) {
    if (u < 0 || u >= instance_.num_sources) {
      throw std::invalid_argument("pmc: source out of range");
    }
  }
  return set->nodes;
}

bool PmcEnvironment::IsFeasible(const Action& action) const {
  const auto* set = std::get_if<SeedSet>(&action);
  if (set == nullptr ||
      static_cast<int>(set->nodes.size()) != instance_.seeds) {
    return false;
  }
  for (std::size_t i = 0; i < set->nodes.size(); ++i) {
    const int u = set->nodes[i];
    if (u < 0 || u >= instance_.num_sources) return false;
    if (i > 0 && set->nodes[i - 1] >= u) return false;
  }
  return true;
}

RoundFeedback PmcEnvironment::Play(const Action& action, Rng& rng) const {
  if (!IsFeasible(action)) {
    throw std::invalid_argument("pmc: infeasible action " + ToString(action));
  }
  const int targets = instance_.num_targets;
  RoundFeedback feedback;
  feedback.triggered.reserve(instance_.seeds * targets);
  std::vector<char> covered(targets, 0);
  for (int u : SourcesOf(action)) {
    for (int v = 0; v < targets; ++v) {
      const int arm = instance_.ArmIndex(u, v);
      const double x = rng.Bernoulli(instance_.edge_means[arm]) ? 1.0 : 0.0;
      feedback.triggered.push_back({arm, x});
      if (x == 1.0) covered[v] = 1;
    }
  }
  feedback.reward = static_cast<double>(
      std::count(covered.begin(), covered.end(), char{1}));
  return feedback;
}

double PmcEnvironment::ExpectedReward(const Action& action,
                                      std::span<const double> means) const {
  return PmcExpectedReward(instance_, SourcesOf(action), means);
}

std::vector<double> PmcEnvironment::TriggeringProbs(
    const Action& action, std::span<const double> /*means*/) const {
  std::vector<double> p(NumArms(), 0.0);
  for (int arm : ActionArms(action)) p[arm] = 1.0;
  return p;
}

std::vector<int> PmcEnvironment::ActionArms(const Action& action) const {
  std::vector<int> sources = SourcesOf(action);
  std::sort(sources.begin(), sources.end());
  std::vector<int> arms;
  arms.reserve(sources.size() * instance_.num_targets);
  for (int u : sources) {
    for (int v = 0; v < instance_.num_targets; ++v) {
      arms.push_back(instance_.ArmIndex(u, v));
    }
  }
  return arms;
}

double PmcEnvironment::LogActionCount() const {
  return LogBinomial(instance_.num_sources, instance_.seeds);
}

std::optional<std::vector<Action>> PmcEnvironment::EnumerateActions(
    std::size_t limit) const {
  auto sets = Subsets(instance_.num_sources, instance_.seeds, limit);
  if (!sets) return std::nullopt;
  std::vector<Action> actions;
  actions.reserve(sets->size());
  for (auto& set : *sets) actions.emplace_back(SeedSet{std::move(set)});
  return actions;
}

int PmcEnvironment::BatchSize() const {
  return instance_.seeds * instance_.num_targets;
}

Action PmcEnvironment::RandomAction(Rng& rng) const {
  std::vector<int> items(instance_.num_sources);
  std::iota(items.begin(), items.end(), 0);
  for (int i = 0; i < instance_.seeds; ++i) {
    const auto j = i + static_cast<int>(rng.UniformIndex(items.size() - i));
    std::swap(items[i], items[j]);
  }
  items.resize(instance_.seeds);
  std::sort(items.begin(), items.end());
  return SeedSet{std::move(items)};
}

Action PmcEnvironment::MakeAction(std::vector<int> elements) const {
  std::sort(elements.begin(), elements.end());
  return SeedSet{std::move(elements)};
}

Action PmcEnvironment::CoverUnobserved(
    std::span<const std::int64_t> counts) const {
  // Sources own disjoint edge sets, so the best cover is the top-k sources
  // by number of unobserved edges.
  std::vector<int> unobserved(instance_.num_sources, 0);
  for (int u = 0; u < instance_.num_sources; ++u) {
    for (int v = 0; v < instance_.num_targets; ++v) {
      unobserved[u] += counts[instance_.ArmIndex(u, v)] == 0;
    }
  }
  std::vector<int> order(instance_.num_sources);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return unobserved[a] > unobserved[b];
  });
  order.resize(instance_.seeds);
  std::sort(order.begin(), order.end());
  return SeedSet{std::move(order)};
}

}  // namespace cmabt
