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

#include <cmath>
#include <vector>

#include "cmabt/errors.h"
#include "gtest/gtest.h"
#include "reference.h"

namespace cmabt {
namespace {

TEST(CascadeRewardTest, HandProducts) {
  const std::vector<double> mu = {0.1, 0.2, 0.3};
  EXPECT_NEAR(CascadeExpectedReward(CascadeMode::kDisjunctive, mu), 0.496,
              1e-15);
  EXPECT_EQ(CascadeExpectedReward(CascadeMode::kDisjunctive,
                                  std::vector<double>{0.0, 0.0}),
            0.0);
  EXPECT_DOUBLE_EQ(CascadeExpectedReward(CascadeMode::kConjunctive,
                                         std::vector<double>{0.5, 0.5}),
                   0.25);
}

TEST(CascadeRewardTest, TriggeringPrefixProducts) {
  const std::vector<double> mu = {0.1, 0.2, 0.3};
  EXPECT_NEAR(CascadeTriggeringProb(CascadeMode::kDisjunctive, mu, 2), 0.72,
              1e-15);
  EXPECT_EQ(CascadeTriggeringProb(CascadeMode::kDisjunctive, mu, 0), 1.0);
  EXPECT_NEAR(CascadeTriggeringProb(CascadeMode::kConjunctive, mu, 2), 0.02,
              1e-15);

  CascadeEnvironment env({{0.1, 0.2, 0.3, 0.4}, 3, CascadeMode::kDisjunctive});
  const Action list = RankedList{{0, 1, 2}};
  EXPECT_EQ(env.TriggeringProb(list, env.TrueMeans(), 3), 0.0);
  EXPECT_EQ(env.TriggeringProb(list, env.TrueMeans(), 0), 1.0);
}

TEST(CascadeRewardTest, MatchesOutcomeEnumeration) {
  Rng rng(11);
  for (bool disjunctive : {true, false}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> mu(6);
      for (double& x : mu) x = rng.Uniform();
      CascadeEnvironment env({mu, 4,
                              disjunctive ? CascadeMode::kDisjunctive
                                          : CascadeMode::kConjunctive});
      const Action a = env.RandomAction(rng);
      const auto& list = std::get<RankedList>(a).arms;
      const auto ref = reference::CascadeByOutcomes(mu, list, disjunctive);
      EXPECT_NEAR(env.ExpectedReward(a, mu), ref.reward, 1e-12);
      const auto p = env.TriggeringProbs(a, mu);
      for (int i = 0; i < 6; ++i) EXPECT_NEAR(p[i], ref.trigger[i], 1e-12);
    }
  }
}

TEST(CascadePlayTest, StoppingRules) {
  // Means 0/1 make outcomes deterministic.
  CascadeEnvironment dis({{0.0, 1.0, 0.0, 0.0}, 4, CascadeMode::kDisjunctive});
  Rng rng(1);
  auto fb = dis.Play(RankedList{{0, 1, 2, 3}}, rng);
  ASSERT_EQ(fb.triggered.size(), 2u);
  EXPECT_EQ(fb.triggered[0], (Observation{0, 0.0}));
  EXPECT_EQ(fb.triggered[1], (Observation{1, 1.0}));
  EXPECT_EQ(fb.reward, 1.0);
}

TEST(CascadePlayTest, RejectsInfeasibleList) {
  CascadeEnvironment env({{0.2, 0.3, 0.4}, 2, CascadeMode::kDisjunctive});
  Rng rng(1);
  EXPECT_THROW(env.Play(RankedList{{0, 0}}, rng), std::invalid_argument);
  EXPECT_THROW(env.Play(RankedList{{0}}, rng), std::invalid_argument);
  EXPECT_THROW(env.Play(SeedSet{{0, 1}}, rng), std::invalid_argument);
}

TEST(CascadePlayTest, AllZeroAndConjunctive) {
  Rng rng(1);
  CascadeEnvironment dis({{0.0, 0.0, 0.0}, 3, CascadeMode::kDisjunctive});
  auto fb = dis.Play(RankedList{{2, 0, 1}}, rng);
  EXPECT_EQ(fb.triggered.size(), 3u);
  EXPECT_EQ(fb.reward, 0.0);

  CascadeEnvironment con({{1.0, 0.0, 1.0}, 3, CascadeMode::kConjunctive});
  fb = con.Play(RankedList{{0, 1, 2}}, rng);
  ASSERT_EQ(fb.triggered.size(), 2u);
  EXPECT_EQ(fb.triggered[1], (Observation{1, 0.0}));
  EXPECT_EQ(fb.reward, 0.0);
}

TEST(CascadePlayTest, MonteCarloWithinThreeSigma) {
  for (auto mode : {CascadeMode::kDisjunctive, CascadeMode::kConjunctive}) {
    const std::vector<double> mu = {0.3, 0.6, 0.2, 0.8, 0.5};
    CascadeEnvironment env({mu, 4, mode});
    const Action a = RankedList{{3, 0, 4, 1}};
    const int n = 10000;
    Rng rng(21);
    double reward = 0.0;
    std::vector<double> hits(5, 0.0);
    for (int t = 0; t < n; ++t) {
      const auto fb = env.Play(a, rng);
      reward += fb.reward;
      for (const auto& o : fb.triggered) hits[o.arm] += 1.0;
    }
    const double r = env.ExpectedReward(a, mu);
    EXPECT_LE(std::abs(reward / n - r), 3 * std::sqrt(r * (1 - r) / n));
    const auto p = env.TriggeringProbs(a, mu);
    for (int i = 0; i < 5; ++i) {
      const double sd = std::sqrt(p[i] * (1 - p[i]) / n);
      EXPECT_LE(std::abs(hits[i] / n - p[i]), 3 * sd + 1e-12) << "arm " << i;
    }
  }
}

TEST(CascadeEnvironmentTest, MonotoneInMeans) {
  Rng rng(5);
  CascadeEnvironment env({std::vector<double>(8, 0.5), 3,
                          CascadeMode::kConjunctive});
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> mu(8);
    for (double& x : mu) x = rng.Uniform();
    auto raised = mu;
    const int i = static_cast<int>(rng.UniformIndex(8));
    raised[i] = rng.Uniform(mu[i], 1.0);
    const Action a = env.RandomAction(rng);
    ASSERT_LE(env.ExpectedReward(a, mu), env.ExpectedReward(a, raised) + 1e-15);
  }
}

TEST(CascadeEnvironmentTest, SizesAndValidation) {
  CascadeEnvironment env({std::vector<double>(30, 0.05), 10,
                          CascadeMode::kDisjunctive});
  EXPECT_EQ(env.NumArms(), 30);
  EXPECT_EQ(env.BatchSize(), 10);
  EXPECT_NEAR(env.LogActionCount(),
              std::lgamma(31.0) - std::lgamma(21.0), 1e-9);
  EXPECT_FALSE(env.EnumerateActions().has_value());
  EXPECT_THROW(CascadeEnvironment({{0.2}, 2, CascadeMode::kDisjunctive}),
               ConfigError);
  EXPECT_THROW(CascadeEnvironment({{1.2, 0.1}, 1, CascadeMode::kDisjunctive}),
               ConfigError);
}

}  // namespace
}  // namespace cmabt
