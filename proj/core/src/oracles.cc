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

#include "cmabt/oracles.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

#include "cmabt/errors.h"

namespace cmabt {

std::string_view ToString(OracleKind kind) {
  switch (kind) {
    case OracleKind::kEnumeration:
      return "enumeration";
    case OracleKind::kTopK:
      return "top_k";
    case OracleKind::kGreedySubmodular:
      return "greedy_submodular";
    case OracleKind::kMcGreedyIm:
      return "mc_greedy_im";
  }
  return "unknown";
}

OracleKind ParseOracleKind(std::string_view name) {
  for (auto kind : {OracleKind::kEnumeration, OracleKind::kTopK,
                    OracleKind::kGreedySubmodular, OracleKind::kMcGreedyIm}) {
    if (ToString(kind) == name) return kind;
  }
  throw ConfigError("unknown oracle '" + std::string(name) + "'");
}

OracleSpec OracleSpec::Enumeration() { return {OracleKind::kEnumeration}; }

OracleSpec OracleSpec::TopK() { return {OracleKind::kTopK}; }

OracleSpec OracleSpec::GreedySubmodular() {
  return {OracleKind::kGreedySubmodular, 1.0 - std::exp(-1.0), 1.0};
}

OracleSpec OracleSpec::McGreedyIm(int n_sim, int num_nodes) {
  return {OracleKind::kMcGreedyIm, 1.0 - std::exp(-1.0),
          1.0 / static_cast<double>(num_nodes), n_sim};
}

Action EnumerateOracle(std::span<const Action> actions,
                       const ActionValueFn& value) {
  if (actions.empty()) throw OracleError("enumeration oracle: no actions");
  std::size_t best = 0;
  double best_value = value(actions[0]);
  for (std::size_t a = 1; a < actions.size(); ++a) {
    const double v = value(actions[a]);
    if (v > best_value ||
        (v == best_value && Payload(actions[a]) < Payload(actions[best]))) {
      best = a;
      best_value = v;
    }
  }
  return actions[best];
}

RankedList TopKOracle(std::span<const double> values, int k) {
  if (k < 0 || k > static_cast<int>(values.size())) {
    throw std::invalid_argument("top_k: k exceeds the number of arms");
  }
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });
  order.resize(k);
  return RankedList{std::move(order)};
}

std::vector<int> GreedySubmodular(std::span<const int> ground, int k,
                                  const SetValueFn& value) {
  if (k < 0 || k > static_cast<int>(ground.size())) {
    throw std::invalid_argument("greedy: k exceeds the ground set");
  }
  // (gain, element, round the gain was computed in)
  using Entry = std::tuple<double, int, int>;
  auto worse = [](const Entry& a, const Entry& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) > std::get<1>(b);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> queue(worse);

  std::vector<int> chosen;
  double current = value(chosen);
  std::vector<int> trial;
  auto gain_of = [&](int element) {
    trial = chosen;
    trial.insert(std::lower_bound(trial.begin(), trial.end(), element),
                 element);
    return value(trial) - current;
  };
  for (int element : ground) queue.emplace(gain_of(element), element, 0);

  for (int round = 0; round < k; ++round) {
    while (true) {
      auto [gain, element, stamp] = queue.top();
      queue.pop();
      if (stamp == round) {
        chosen.insert(std::lower_bound(chosen.begin(), chosen.end(), element),
                      element);
        current = value(chosen);
        break;
      }
      queue.emplace(gain_of(element), element, round);
    }
  }
  return chosen;
}

std::vector<int> McGreedyIm(const DagImInstance& dag, int k,
                            std::span<const double> edge_probs, int n_sim,
                            std::uint64_t seed) {
  if (n_sim < 1) throw std::invalid_argument("mc_greedy_im: n_sim < 1");
  if (k < 0 || k > dag.num_nodes()) {
    throw std::invalid_argument("mc_greedy_im: k exceeds |V|");
  }
  const std::size_t m = dag.edges().size();
  Rng rng(seed);
  std::vector<std::vector<char>> samples(n_sim, std::vector<char>(m));
  for (auto& live : samples) {
    for (std::size_t e = 0; e < m; ++e) {
      live[e] = rng.Bernoulli(edge_probs[e]) ? 1 : 0;
    }
  }
  auto total_spread = [&](const std::vector<int>& seeds) {
    long long total = 0;
    for (const auto& live : samples) {
      total += dag.CountReachable(seeds, live, nullptr);
    }
    return total;
  };

  std::vector<int> chosen;
  std::vector<char> in_set(dag.num_nodes(), 0);
  for (int round = 0; round < k; ++round) {
    int best = -1;
    long long best_total = -1;
    for (int v = 0; v < dag.num_nodes(); ++v) {
      if (in_set[v]) continue;
      auto trial = chosen;
      trial.push_back(v);
      const long long total = total_spread(trial);
      if (total > best_total) {
        best_total = total;
        best = v;
      }
    }
    in_set[best] = 1;
    chosen.push_back(best);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

std::vector<int> Ground(const Environment& env) {
  std::vector<int> ground(env.GroundSize());
  std::iota(ground.begin(), ground.end(), 0);
  return ground;
}

}  // namespace

Action SolveForArmValues(const Environment& env, const OracleSpec& spec,
                         std::span<const double> arm_values,
                         std::uint64_t seed) {
  if (static_cast<int>(arm_values.size()) != env.NumArms()) {
    throw std::invalid_argument("oracle: arm value vector has wrong length");
  }
  switch (spec.kind) {
    case OracleKind::kEnumeration: {
      auto actions = env.EnumerateActions(kEnumerationLimit);
      if (!actions) {
        throw OracleError(std::string(env.Kind()) +
                          ": action space too large to enumerate");
      }
      return EnumerateOracle(*actions, [&](const Action& a) {
        return env.ExpectedReward(a, arm_values);
      });
    }
    case OracleKind::kTopK:
      if (env.Shape() != ActionShape::kRankedList) {
        throw ConfigError("top_k oracle needs a ranked-list environment");
      }
      return TopKOracle(arm_values, env.ActionSize());
    case OracleKind::kGreedySubmodular: {
      const auto ground = Ground(env);
      return env.MakeAction(GreedySubmodular(
          ground, env.ActionSize(), [&](std::span<const int> set) {
            return env.ExpectedReward(
                env.MakeAction(std::vector<int>(set.begin(), set.end())),
                arm_values);
          }));
    }
    case OracleKind::kMcGreedyIm: {
      const auto* dag_env = dynamic_cast<const DagImEnvironment*>(&env);
      if (dag_env == nullptr) {
        throw ConfigError("mc_greedy_im oracle needs an oim_dag environment");
      }
      return SeedSet{McGreedyIm(dag_env->dag(), env.ActionSize(), arm_values,
                                spec.n_sim, seed)};
    }
  }
  throw std::logic_error("unhandled oracle kind");
}

Action SolveForActionValues(const Environment& env, const OracleSpec& spec,
                            const std::vector<Action>* actions,
                            const ActionValueFn& value) {
  switch (spec.kind) {
    case OracleKind::kEnumeration:
      if (actions == nullptr) {
        throw OracleError("enumeration oracle: action list not available");
      }
      return EnumerateOracle(*actions, value);
    case OracleKind::kGreedySubmodular: {
      const auto ground = Ground(env);
      return env.MakeAction(GreedySubmodular(
          ground, env.ActionSize(), [&](std::span<const int> set) {
            return value(
                env.MakeAction(std::vector<int>(set.begin(), set.end())));
          }));
    }
    default:
      throw ConfigError(std::string(ToString(spec.kind)) +
                        " oracle cannot maximize super-arm indices");
  }
}

}  // namespace cmabt
