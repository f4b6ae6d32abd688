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

#include <cstdint>
#include <memory>
#include <vector>

#include "benchmark/benchmark.h"
#include "cmabt/arm_stats.h"
#include "cmabt/cascade.h"
#include "cmabt/dag_im.h"
#include "cmabt/oracles.h"
#include "cmabt/pmc.h"
#include "cmabt/policies.h"
#include "cmabt/rng.h"

namespace cmabt {
namespace {

void BM_EmpiricalBernsteinRadius(benchmark::State& state) {
  ArmStats stats{1000, 0.4, 0.2};
  double t = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EmpiricalBernsteinRadius(stats, t));
    t += 1.0;
  }
}
BENCHMARK(BM_EmpiricalBernsteinRadius);

void BM_SescbRadius(benchmark::State& state) {
  std::vector<std::int64_t> counts(state.range(0));
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] = 50 + 7 * i;
  SescbParams params{9.49, 3.0, 5.53, 10000, 0.01};
  for (auto _ : state) {
    benchmark::DoNotOptimize(SescbRadius(counts, params));
  }
}
BENCHMARK(BM_SescbRadius)->Arg(20)->Arg(100);

void BM_TopKOracle(benchmark::State& state) {
  Rng rng(1);
  std::vector<double> values(state.range(0));
  for (double& v : values) v = rng.Uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(TopKOracle(values, 10));
  }
}
BENCHMARK(BM_TopKOracle)->Arg(30)->Arg(1000);

PmcEnvironment MakePmc(int sources, int targets, int k) {
  Rng rng(2);
  PmcInstance inst{sources, targets, {}, k};
  for (int i = 0; i < sources * targets; ++i) {
    inst.edge_means.push_back(rng.Uniform(0.05, 0.06));
  }
  return PmcEnvironment(inst);
}

void BM_PmcEnumeration(benchmark::State& state) {
  const PmcEnvironment env = MakePmc(10, 20, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SolveForArmValues(env, OracleSpec::Enumeration(), env.TrueMeans(), 0));
  }
}
BENCHMARK(BM_PmcEnumeration)->Unit(benchmark::kMillisecond);

void BM_PmcGreedy(benchmark::State& state) {
  const PmcEnvironment env = MakePmc(10, 20, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveForArmValues(
        env, OracleSpec::GreedySubmodular(), env.TrueMeans(), 0));
  }
}
BENCHMARK(BM_PmcGreedy)->Unit(benchmark::kMicrosecond);

void BM_McGreedyIm(benchmark::State& state) {
  Rng rng(3);
  std::vector<DagEdge> edges;
  std::vector<double> probs;
  for (int u = 0; u < 20; ++u) {
    for (int v = u + 1; v < 20; ++v) {
      if (rng.Bernoulli(0.2)) {
        edges.push_back({u, v, rng.Uniform(0.05, 0.3)});
        probs.push_back(edges.back().prob);
      }
    }
  }
  DagImInstance dag(20, edges, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(McGreedyIm(dag, 3, probs, 1000, 4));
  }
}
BENCHMARK(BM_McGreedyIm)->Unit(benchmark::kMillisecond);

void PolicySteps(benchmark::State& state, const Environment& env,
                 PolicyKind kind, OracleSpec oracle) {
  PolicyConfig config;
  config.kind = kind;
  config.oracle = oracle;
  config.horizon = 1 << 20;
  config.alpha_rho = 0.01;
  auto policy = MakePolicy(env, config, 5);
  Rng rng(6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(policy->Step(rng));
  }
}

void BM_CascadeBcucbTStep(benchmark::State& state) {
  Rng rng(7);
  std::vector<double> means(30);
  for (double& m : means) m = rng.Uniform(0.0, 0.1);
  CascadeEnvironment env({means, 10, CascadeMode::kDisjunctive});
  PolicySteps(state, env, PolicyKind::kBcucbT, OracleSpec::TopK());
}
BENCHMARK(BM_CascadeBcucbTStep);

void BM_PmcSescbStep(benchmark::State& state) {
  const PmcEnvironment env = MakePmc(10, 20, 5);
  PolicySteps(state, env, PolicyKind::kSescbSubmodular,
              OracleSpec::Enumeration());
}
BENCHMARK(BM_PmcSescbStep)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cmabt

BENCHMARK_MAIN();
