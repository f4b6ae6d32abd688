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
#include <cmath>
#include <vector>

#include "cmabt/combinatorics.h"
#include "cmabt/errors.h"
#include "gtest/gtest.h"
#include "reference.h"

namespace cmabt {
namespace {

PmcInstance RandomInstance(int sources, int targets, int k, Rng& rng) {
  PmcInstance inst{sources, targets, {}, k};
  for (int i = 0; i < sources * targets; ++i) {
    inst.edge_means.push_back(rng.Uniform());
  }
  return inst;
}

TEST(PmcRewardTest, HandValues) {
  PmcInstance inst{2, 2, {0.3, 0.4, 0.5, 0.5}, 1};
  EXPECT_NEAR(PmcExpectedReward(inst, std::vector<int>{0}, inst.edge_means),
              0.7, 1e-15);
  // Target 0 covered by both sources: 1 - 0.7 * 0.5.
  PmcInstance both{2, 1, {0.5, 0.5}, 2};
  EXPECT_DOUBLE_EQ(
      PmcExpectedReward(both, std::vector<int>{0, 1}, both.edge_means), 0.75);
  const std::vector<double> zeros(4, 0.0);
  EXPECT_EQ(PmcExpectedReward(inst, std::vector<int>{0, 1}, zeros), 0.0);
}

TEST(PmcRewardTest, MatchesOutcomeEnumeration) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    PmcEnvironment env(RandomInstance(4, 3, 2, rng));
    const Action a = env.RandomAction(rng);
    const auto& s = std::get<SeedSet>(a).nodes;
    EXPECT_NEAR(env.ExpectedReward(a, env.TrueMeans()),
                reference::PmcByOutcomes(3, env.TrueMeans(), s), 1e-12);
  }
}

TEST(PmcRewardTest, Submodular) {
  Rng rng(17);
  PmcInstance inst = RandomInstance(8, 6, 3, rng);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> big, small;
    for (int u = 0; u < 8; ++u) {
      if (rng.Bernoulli(0.5)) {
        big.push_back(u);
        if (rng.Bernoulli(0.5)) small.push_back(u);
      }
    }
    std::vector<int> outside;
    for (int u = 0; u < 8; ++u) {
      if (std::find(big.begin(), big.end(), u) == big.end()) outside.push_back(u);
    }
    if (outside.empty()) continue;
    const int j = outside[rng.UniformIndex(outside.size())];
    auto with = [&](std::vector<int> s) {
      s.push_back(j);
      std::sort(s.begin(), s.end());
      return PmcExpectedReward(inst, s, inst.edge_means);
    };
    const double gain_small =
        with(small) - PmcExpectedReward(inst, small, inst.edge_means);
    const double gain_big =
        with(big) - PmcExpectedReward(inst, big, inst.edge_means);
    ASSERT_GE(gain_small, gain_big - 1e-12);
  }
}

TEST(PmcPlayTest, RewardCountsCoveredTargets) {
  Rng rng(1);
  PmcEnvironment ones({1, 2, {1.0, 0.0}, 1});
  auto fb = ones.Play(SeedSet{{0}}, rng);
  ASSERT_EQ(fb.triggered.size(), 2u);
  EXPECT_EQ(fb.triggered[0], (Observation{0, 1.0}));
  EXPECT_EQ(fb.triggered[1], (Observation{1, 0.0}));
  EXPECT_EQ(fb.reward, 1.0);
  PmcEnvironment all({1, 2, {1.0, 1.0}, 1});
  EXPECT_EQ(all.Play(SeedSet{{0}}, rng).reward, 2.0);
  PmcEnvironment none({1, 2, {0.0, 0.0}, 1});
  EXPECT_EQ(none.Play(SeedSet{{0}}, rng).reward, 0.0);
}

TEST(PmcPlayTest, MonteCarloWithinThreeSigma) {
  Rng gen(8);
  PmcEnvironment env(RandomInstance(5, 4, 2, gen));
  const Action a = SeedSet{{1, 3}};
  Rng rng(99);
  const int n = 10000;
  std::vector<double> rewards;
  for (int t = 0; t < n; ++t) rewards.push_back(env.Play(a, rng).reward);
  const auto [mean, var] = reference::BatchMeanVariance(rewards);
  EXPECT_LE(std::abs(mean - env.ExpectedReward(a, env.TrueMeans())),
            3 * std::sqrt(var / n));
}

TEST(PmcEnvironmentTest, NonTriggeringShape) {
  Rng rng(2);
  PmcEnvironment env(RandomInstance(10, 20, 5, rng));
  EXPECT_FALSE(env.IsTriggering());
  EXPECT_EQ(env.NumArms(), 200);
  EXPECT_EQ(env.BatchSize(), 100);
  EXPECT_EQ(env.EnumerateActions()->size(), 252u);
  EXPECT_NEAR(env.LogActionCount(), std::log(252.0), 1e-12);
  const auto arms = env.ActionArms(SeedSet{{2, 7}});
  ASSERT_EQ(arms.size(), 40u);
  EXPECT_EQ(arms.front(), 40);
  EXPECT_EQ(arms.back(), 159);
  const auto p = env.TriggeringProbs(SeedSet{{2, 7}}, env.TrueMeans());
  EXPECT_EQ(p[40], 1.0);
  EXPECT_EQ(p[0], 0.0);
}

TEST(PmcEnvironmentTest, CoverPicksMostUnobservedSources) {
  PmcEnvironment env({4, 2, std::vector<double>(8, 0.5), 2});
  std::vector<std::int64_t> counts(8, 1);
  counts[env.instance().ArmIndex(3, 0)] = 0;
  counts[env.instance().ArmIndex(3, 1)] = 0;
  counts[env.instance().ArmIndex(1, 1)] = 0;
  EXPECT_EQ(env.CoverUnobserved(counts), Action(SeedSet{{1, 3}}));
  std::vector<std::int64_t> fresh(8, 0);
  EXPECT_EQ(env.CoverUnobserved(fresh), Action(SeedSet{{0, 1}}));
}

TEST(PmcEnvironmentTest, Validation) {
  EXPECT_THROW(PmcEnvironment({2, 2, {0.1, 0.2, 0.3}, 1}), ConfigError);
  EXPECT_THROW(PmcEnvironment({2, 2, {0.1, 0.2, 0.3, 0.4}, 3}), ConfigError);
}

}  // namespace
}  // namespace cmabt
