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

#ifndef CMABT_DAG_IM_H_
#define CMABT_DAG_IM_H_

#include <span>
#include <vector>

#include "cmabt/environment.h"

namespace cmabt {

struct DagEdge {
  int source = 0;
  int target = 0;
  double prob = 0.0;  // true activation probability p(u, v)
};

// Independent-cascade influence maximization on a directed acyclic graph.
// Base arms are edges, indexed in input order.
class DagImInstance {
 public:
  // Throws ConfigError on a cycle, an out-of-range endpoint, a self loop or
  // a seed budget outside [1, num_nodes].
  DagImInstance(int num_nodes, std::vector<DagEdge> edges, int seeds);

  int num_nodes() const { return num_nodes_; }
  int seeds() const { return seeds_; }
  const std::vector<DagEdge>& edges() const { return edges_; }
  const std::vector<int>& out_edges(int node) const { return out_[node]; }
  const std::vector<int>& topological_order() const { return topo_; }

  // Number of edges on the longest directed path.
  int LongestPathLength() const;

  // Edges whose source is reachable from `seeds` in the full graph; these are
  // the only edges that can be triggered.
  std::vector<int> ReachableEdges(std::span<const int> seeds) const;

  // Nodes reachable from `seeds` using only edges with live[e] set.
  int CountReachable(std::span<const int> seeds,
                     const std::vector<char>& live,
                     std::vector<char>* reached) const;

 private:
  int num_nodes_;
  std::vector<DagEdge> edges_;
  int seeds_;
  std::vector<std::vector<int>> out_;
  std::vector<int> topo_;
};

// Mean number of nodes reachable from `seeds` over n_sim sampled live-edge
// graphs with edge e live w.p. edge_probs[e].
double OimSigmaMc(const DagImInstance& dag, std::span<const int> seeds,
                  std::span<const double> edge_probs, int n_sim, Rng& rng);

// Exact influence spread by enumerating live/dead states of the edges that
// can be reached from `seeds`. Throws std::invalid_argument above
// `max_edges` such edges.
double OimSigmaExact(const DagImInstance& dag, std::span<const int> seeds,
                     std::span<const double> edge_probs, int max_edges = 22);

// Monte-Carlo frequency with which edge's source is reachable from `seeds`.
double OimTriggeringProbMc(const DagImInstance& dag, std::span<const int> seeds,
                           int edge, std::span<const double> edge_probs,
                           int n_sim, Rng& rng);

// Monte-Carlo triggering frequency of every edge from one shared sample.
std::vector<double> OimTriggeringProbsMc(const DagImInstance& dag,
                                         std::span<const int> seeds,
                                         std::span<const double> edge_probs,
                                         int n_sim, Rng& rng);

class DagImEnvironment final : public Environment {
 public:
  // Expected rewards use exact enumeration up to this many reachable edges
  // and a fixed-seed Monte-Carlo estimate with kFallbackSims samples above.
  static constexpr int kExactEdgeLimit = 20;
  static constexpr int kFallbackSims = 20000;

  explicit DagImEnvironment(DagImInstance dag);

  const DagImInstance& dag() const { return dag_; }

  std::string_view Kind() const override { return "oim_dag"; }
  int NumArms() const override;
  const std::vector<double>& TrueMeans() const override { return means_; }
  ActionShape Shape() const override { return ActionShape::kSeedSet; }
  int ActionSize() const override { return dag_.seeds(); }
  int GroundSize() const override { return dag_.num_nodes(); }
  bool IsFeasible(const Action& action) const override;
  RoundFeedback Play(const Action& action, Rng& rng) const override;
  double ExpectedReward(const Action& action,
                        std::span<const double> means) const override;
  std::vector<double> TriggeringProbs(
      const Action& action, std::span<const double> means) const override;
  bool HasAnalyticTriggering() const override { return false; }
  std::vector<double> EstimateTriggeringProbs(const Action& action,
                                              std::span<const double> means,
                                              int n_sim,
                                              Rng& rng) const override;
  std::vector<int> ActionArms(const Action& action) const override;
  double LogActionCount() const override;
  std::optional<std::vector<Action>> EnumerateActions(
      std::size_t limit = kEnumerationLimit) const override;
  int BatchSize() const override;
  Action RandomAction(Rng& rng) const override;
  Action MakeAction(std::vector<int> elements) const override;

 private:
  const std::vector<int>& SeedsOf(const Action& action) const;

  DagImInstance dag_;
  std::vector<double> means_;
};

}  // namespace cmabt

#endif  // CMABT_DAG_IM_H_
