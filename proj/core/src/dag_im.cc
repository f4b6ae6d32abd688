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

#include "cmabt/dag_im.h"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cmabt/combinatorics.h"
#include "cmabt/errors.h"

namespace cmabt {

DagImInstance::DagImInstance(int num_nodes, std::vector<DagEdge> edges,
                             int seeds)
    : num_nodes_(num_nodes), edges_(std::move(edges)), seeds_(seeds) {
  if (num_nodes_ < 1) throw ConfigError("oim_dag: need at least one node");
  if (seeds_ < 1 || seeds_ > num_nodes_) {
    throw ConfigError("oim_dag: k must be in [1, |V|]");
  }
  out_.assign(num_nodes_, {});
  std::vector<int> indegree(num_nodes_, 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& edge = edges_[e];
    if (edge.source < 0 || edge.source >= num_nodes_ || edge.target < 0 ||
        edge.target >= num_nodes_) {
      throw ConfigError("oim_dag: edge endpoint out of range");
    }
    if (edge.source == edge.target) throw ConfigError("oim_dag: self loop");
    if (!(edge.prob >= 0.0 && edge.prob <= 1.0)) {
      throw ConfigError("oim_dag: edge probabilities must lie in [0, 1]");
    }
    out_[edge.source].push_back(static_cast<int>(e));
    ++indegree[edge.target];
  }
  // Kahn's algorithm, smallest ready node first.
  std::vector<int> ready;
  for (int v = 0; v < num_nodes_; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::make_heap(ready.begin(), ready.end(), std::greater<>());
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    const int v = ready.back();
    ready.pop_back();
    topo_.push_back(v);
    for (int e : out_[v]) {
      if (--indegree[edges_[e].target] == 0) {
        ready.push_back(edges_[e].target);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
    }
  }
  if (static_cast<int>(topo_.size()) != num_nodes_) {
    throw ConfigError("oim_dag: graph has a directed cycle");
  }
}

int DagImInstance::LongestPathLength() const {
  std::vector<int> longest(num_nodes_, 0);
  for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
    for (int e : out_[*it]) {
      longest[*it] = std::max(longest[*it], 1 + longest[edges_[e].target]);
    }
  }
  return num_nodes_ == 0 ? 0 : *std::max_element(longest.begin(), longest.end());
}

std::vector<int> DagImInstance::ReachableEdges(std::span<const int> seeds) const {
  const std::vector<char> all_live(edges_.size(), 1);
  std::vector<char> reached;
  CountReachable(seeds, all_live, &reached);
  std::vector<int> result;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (reached[edges_[e].source]) result.push_back(static_cast<int>(e));
  }
  return result;
}

int DagImInstance::CountReachable(std::span<const int> seeds,
                                  const std::vector<char>& live,
                                  std::vector<char>* reached) const {
  std::vector<char> local;
  std::vector<char>& mark = reached ? *reached : local;
  mark.assign(num_nodes_, 0);
  std::vector<int> stack;
  int count = 0;
  for (int s : seeds) {
    if (!mark[s]) {
      mark[s] = 1;
      ++count;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e : out_[v]) {
      const int w = edges_[e].target;
      if (live[e] && !mark[w]) {
        mark[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count;
}

namespace {

void SampleLive(std::span<const double> probs, Rng& rng,
                std::vector<char>& live) {
  for (std::size_t e = 0; e < probs.size(); ++e) {
    live[e] = rng.Bernoulli(probs[e]) ? 1 : 0;
  }
}

// Calls fn(weight, live) for every live/dead assignment of the edges in
// `relevant`; all other edges are dead.
template <typename Fn>
void ForEachLiveEdgeGraph(const DagImInstance& dag,
                          const std::vector<int>& relevant,
                          std::span<const double> probs, Fn&& fn) {
  std::vector<char> live(dag.edges().size(), 0);
  const std::uint64_t configs = std::uint64_t{1} << relevant.size();
  for (std::uint64_t mask = 0; mask < configs; ++mask) {
    double weight = 1.0;
    for (std::size_t j = 0; j < relevant.size(); ++j) {
      const int e = relevant[j];
      const bool on = (mask >> j) & 1U;
      live[e] = on;
      weight *= on ? probs[e] : 1.0 - probs[e];
    }
    if (weight > 0.0) fn(weight, live);
  }
}

std::vector<int> CheckedRelevant(const DagImInstance& dag,
                                 std::span<const int> seeds, int max_edges) {
  std::vector<int> relevant = dag.ReachableEdges(seeds);
  if (static_cast<int>(relevant.size()) > max_edges) {
    throw std::invalid_argument("oim_dag: " + std::to_string(relevant.size()) +
                                " reachable edges exceed the exact limit");
  }
  return relevant;
}

std::vector<double> TriggeringProbsExact(const DagImInstance& dag,
                                         std::span<const int> seeds,
                                         std::span<const double> probs,
                                         int max_edges) {
  const auto relevant = CheckedRelevant(dag, seeds, max_edges);
  std::vector<double> p(dag.edges().size(), 0.0);
  std::vector<char> reached;
  ForEachLiveEdgeGraph(dag, relevant, probs,
                       [&](double weight, const std::vector<char>& live) {
                         dag.CountReachable(seeds, live, &reached);
                         for (int e : relevant) {
                           if (reached[dag.edges()[e].source]) p[e] += weight;
                         }
                       });
  return p;
}

std::uint64_t ActionSeed(std::span<const int> seeds) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (int s : seeds) h = SplitMix64(h ^ static_cast<std::uint64_t>(s));
  return h;
}

}  // namespace

double OimSigmaMc(const DagImInstance& dag, std::span<const int> seeds,
                  std::span<const double> edge_probs, int n_sim, Rng& rng) {
  if (n_sim < 1) throw std::invalid_argument("oim_sigma_mc: n_sim < 1");
  std::vector<char> live(dag.edges().size());
  double total = 0.0;
  for (int s = 0; s < n_sim; ++s) {
    SampleLive(edge_probs, rng, live);
    total += dag.CountReachable(seeds, live, nullptr);
  }
  return total / n_sim;
}

double OimSigmaExact(const DagImInstance& dag, std::span<const int> seeds,
                     std::span<const double> edge_probs, int max_edges) {
  const auto relevant = CheckedRelevant(dag, seeds, max_edges);
  double sigma = 0.0;
  ForEachLiveEdgeGraph(dag, relevant, edge_probs,
                       [&](double weight, const std::vector<char>& live) {
                         sigma += weight * dag.CountReachable(seeds, live,
                                                              nullptr);
                       });
  return sigma;
}

std::vector<double> OimTriggeringProbsMc(const DagImInstance& dag,
                                         std::span<const int> seeds,
                                         std::span<const double> edge_probs,
                                         int n_sim, Rng& rng) {
  if (n_sim < 1) throw std::invalid_argument("oim_triggering: n_sim < 1");
  const std::size_t m = dag.edges().size();
  std::vector<char> live(m);
  std::vector<char> reached;
  std::vector<double> hits(m, 0.0);
  for (int s = 0; s < n_sim; ++s) {
    SampleLive(edge_probs, rng, live);
    dag.CountReachable(seeds, live, &reached);
    for (std::size_t e = 0; e < m; ++e) {
      if (reached[dag.edges()[e].source]) hits[e] += 1.0;
    }
  }
  for (double& h : hits) h /= n_sim;
  return hits;
}

double OimTriggeringProbMc(const DagImInstance& dag, std::span<const int> seeds,
                           int edge, std::span<const double> edge_probs,
                           int n_sim, Rng& rng) {
  if (edge < 0 || edge >= static_cast<int>(dag.edges().size())) {
    throw std::out_of_range("oim_triggering: edge out of range");
  }
  return OimTriggeringProbsMc(dag, seeds, edge_probs, n_sim, rng)[edge];
}

DagImEnvironment::DagImEnvironment(DagImInstance dag) : dag_(std::move(dag)) {
  means_.reserve(dag_.edges().size());
  for (const auto& edge : dag_.edges()) means_.push_back(edge.prob);
}

int DagImEnvironment::NumArms() const {
  return static_cast<int>(dag_.edges().size());
}

const std::vector<int>& DagImEnvironment::SeedsOf(const Action& action) const {
  const auto* set = std::get_if<SeedSet>(&action);
  if (set == nullptr) {
    throw std::invalid_argument("oim_dag: action must be a seed set");
  }
  for (int v : set->nodes) {
    if (v < 0 || v >= dag_.num_nodes()) {
      throw std::invalid_argument("oim_dag: seed out of range");
    }
  }
  return set->nodes;
}

bool DagImEnvironment::IsFeasible(const Action& action) const {
  const auto* set = std::get_if<SeedSet>(&action);
  if (set == nullptr || static_cast<int>(set->nodes.size()) > dag_.seeds()) {
    return false;
  }
  for (std::size_t i = 0; i < set->nodes.size(); ++i) {
    const int v = set->nodes[i];
    if (v < 0 || v >= dag_.num_nodes()) return false;
    if (i > 0 && set->nodes[i - 1] >= v) return false;
  }
  return true;
}

RoundFeedback DagImEnvironment::Play(const Action& action, Rng& rng) const {
  if (!IsFeasible(action)) {
    throw std::invalid_argument("oim_dag: infeasible action " +
                                ToString(action));
  }
  const auto& seeds = SeedsOf(action);
  std::vector<char> live(means_.size());
  SampleLive(means_, rng, live);
  std::vector<char> reached;
  RoundFeedback feedback;
  feedback.reward = dag_.CountReachable(seeds, live, &reached);
  for (std::size_t e = 0; e < means_.size(); ++e) {
    if (reached[dag_.edges()[e].source]) {
      feedback.triggered.push_back({static_cast<int>(e), live[e] ? 1.0 : 0.0});
    }
  }
  return feedback;
}

double DagImEnvironment::ExpectedReward(const Action& action,
                                        std::span<const double> means) const {
  const auto& seeds = SeedsOf(action);
  if (static_cast<int>(dag_.ReachableEdges(seeds).size()) <= kExactEdgeLimit) {
    return OimSigmaExact(dag_, seeds, means, kExactEdgeLimit);
  }
  Rng rng(ActionSeed(seeds));
  return OimSigmaMc(dag_, seeds, means, kFallbackSims, rng);
}

std::vector<double> DagImEnvironment::TriggeringProbs(
    const Action& action, std::span<const double> means) const {
  const auto& seeds = SeedsOf(action);
  if (static_cast<int>(dag_.ReachableEdges(seeds).size()) <= kExactEdgeLimit) {
    return TriggeringProbsExact(dag_, seeds, means, kExactEdgeLimit);
  }
  Rng rng(ActionSeed(seeds));
  return OimTriggeringProbsMc(dag_, seeds, means, kFallbackSims, rng);
}

std::vector<double> DagImEnvironment::EstimateTriggeringProbs(
    const Action& action, std::span<const double> means, int n_sim,
    Rng& rng) const {
  return OimTriggeringProbsMc(dag_, SeedsOf(action), means, n_sim, rng);
}

std::vector<int> DagImEnvironment::ActionArms(const Action& action) const {
  return dag_.ReachableEdges(SeedsOf(action));
}

double DagImEnvironment::LogActionCount() const {
  return LogBinomial(dag_.num_nodes(), dag_.seeds());
}

std::optional<std::vector<Action>> DagImEnvironment::EnumerateActions(
    std::size_t limit) const {
  auto sets = Subsets(dag_.num_nodes(), dag_.seeds(), limit);
  if (!sets) return std::nullopt;
  std::vector<Action> actions;
  actions.reserve(sets->size());
  for (auto& set : *sets) actions.emplace_back(SeedSet{std::move(set)});
  return actions;
}

int DagImEnvironment::BatchSize() const {
  // Exact when the seed sets are few enough to scan, |E| otherwise.
  constexpr std::size_t kScanLimit = 20000;
  auto sets = Subsets(dag_.num_nodes(), dag_.seeds(), kScanLimit);
  if (!sets) return NumArms();
  std::size_t best = 0;
  for (const auto& set : *sets) {
    best = std::max(best, dag_.ReachableEdges(set).size());
  }
  return static_cast<int>(best);
}

Action DagImEnvironment::RandomAction(Rng& rng) const {
  std::vector<int> items(dag_.num_nodes());
  std::iota(items.begin(), items.end(), 0);
  for (int i = 0; i < dag_.seeds(); ++i) {
    const auto j = i + static_cast<int>(rng.UniformIndex(items.size() - i));
    std::swap(items[i], items[j]);
  }
  items.resize(dag_.seeds());
  std::sort(items.begin(), items.end());
  return SeedSet{std::move(items)};
}

Action DagImEnvironment::MakeAction(std::vector<int> elements) const {
  std::sort(elements.begin(), elements.end());
  return SeedSet{std::move(elements)};
}

}  // namespace cmabt
