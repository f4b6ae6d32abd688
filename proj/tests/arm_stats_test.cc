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

#include "cmabt/arm_stats.h"

#include <cmath>
#include <vector>

#include "cmabt/rng.h"
#include "gtest/gtest.h"
#include "reference.h"

namespace cmabt {
namespace {

TEST(UpdateStatsTest, FirstObservationHasZeroVariance) {
  const ArmStats s = UpdateStats({}, 1.0);
  EXPECT_EQ(s.count, 1);
  EXPECT_DOUBLE_EQ(s.mean, 1.0);
  EXPECT_DOUBLE_EQ(s.variance, 0.0);
}

TEST(UpdateStatsTest, MatchesBatchOnSmallSamples) {
  ArmStats s = UpdateStats(UpdateStats({}, 1.0), 0.0);
  EXPECT_EQ(s.count, 2);
  EXPECT_DOUBLE_EQ(s.mean, 0.5);
  EXPECT_DOUBLE_EQ(s.variance, 0.25);
  s = UpdateStats(s, 1.0);
  EXPECT_EQ(s.count, 3);
  EXPECT_NEAR(s.mean, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(s.variance, 2.0 / 9.0, 1e-15);
}

TEST(UpdateStatsTest, WelfordMatchesBatchOverTenThousandSteps) {
  Rng rng(7);
  for (double p : {0.01, 0.3, 0.5, 0.97}) {
    ArmStats s;
    std::vector<double> xs;
    for (int i = 0; i < 10000; ++i) {
      // Mix Bernoulli and continuous outcomes in [0, 1].
      const double x = i % 3 == 0 ? rng.Uniform() : (rng.Bernoulli(p) ? 1 : 0);
      xs.push_back(x);
      s = UpdateStats(s, x);
      if (i % 997 == 0 || i == 9999) {
        const auto [mean, var] = reference::BatchMeanVariance(xs);
        ASSERT_NEAR(s.mean, mean, 1e-9);
        ASSERT_NEAR(s.variance, var, 1e-9);
      }
    }
  }
}

TEST(UpdateStatsTest, MeanStaysInHullOfOutcomes) {
  Rng rng(3);
  ArmStats s;
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.Uniform(0.2, 0.7);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    s = UpdateStats(s, x);
    ASSERT_GE(s.mean, lo - 1e-15);
    ASSERT_LE(s.mean, hi + 1e-15);
    ASSERT_GE(s.variance, 0.0);
  }
}

TEST(EmpiricalBernsteinRadiusTest, UnobservedArmIsInfinite) {
  EXPECT_EQ(EmpiricalBernsteinRadius({}, 10.0), kInfiniteRadius);
}

TEST(EmpiricalBernsteinRadiusTest, HandValues) {
  const double e = std::exp(1.0);
  // sqrt(6 * 0.25 / 100) + 9 / 100
  EXPECT_NEAR(EmpiricalBernsteinRadius({100, 0.5, 0.25}, e),
              std::sqrt(0.015) + 0.09, 1e-12);
  EXPECT_NEAR(EmpiricalBernsteinRadius({100, 0.5, 0.25}, e),
              0.212474, 1e-6);
  EXPECT_NEAR(EmpiricalBernsteinRadius({100, 0.0, 0.0}, e), 0.09, 1e-12);
  EXPECT_NEAR(EmpiricalBernsteinRadius({100, 0.5, 0.25}, e, 0.01),
              0.00212474, 1e-8);
  EXPECT_DOUBLE_EQ(EmpiricalBernsteinRadius({5, 0.5, 0.25}, 1.0), 0.0);
}

TEST(EmpiricalBernsteinRadiusTest, MonotoneInAlpha) {
  const ArmStats s{40, 0.3, 0.2};
  double last = 0.0;
  for (double a : {0.0, 0.01, 0.1, 0.5, 1.0, 2.0}) {
    const double r = EmpiricalBernsteinRadius(s, 100.0, a);
    EXPECT_GE(r, last);
    last = r;
  }
}

TEST(UcbValueTest, ClipsAtOne) {
  EXPECT_EQ(UcbValue({}, 5.0), 1.0);
  EXPECT_NEAR(ClippedUcb(0.5, 0.212474), 0.712474, 1e-12);
  EXPECT_EQ(ClippedUcb(0.9, 0.3), 1.0);
  EXPECT_EQ(ClippedUcb(0.2, kInfiniteRadius), 1.0);
}

}  // namespace
}  // namespace cmabt
