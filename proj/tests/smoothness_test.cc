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

#include "cmabt/smoothness.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cmabt/cascade.h"
#include "cmabt/dag_im.h"
#include "cmabt/errors.h"
#include "cmabt/mulane.h"
#include "cmabt/pmc.h"
#include "gtest/gtest.h"

namespace cmabt {
namespace {

CascadeEnvironment Cascade(CascadeMode mode, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> mu(8);
  for (double& x : mu) x = rng.Uniform(0.02, 0.98);
  return CascadeEnvironment({mu, 4, mode});
}

PmcEnvironment Pmc(int sources, int targets, int k, std::uint64_t seed) {
  Rng rng(seed);
  PmcInstance inst{sources, targets, {}, k};
  for (int i = 0; i < sources * targets; ++i) {
    inst.edge_means.push_back(rng.Uniform(0.02, 0.98));
  }
  return PmcEnvironment(inst);
}

TEST(SmoothnessTest, ZeroPerturbationIsZeroOverZero) {
  CascadeEnvironment env = Cascade(CascadeMode::kDisjunctive, 1);
  SmoothnessTrial trial{RankedList{{0, 1, 2, 3}}, env.TrueMeans(),
                        std::vector<double>(8, 0.0),
                        std::vector<double>(8, 0.0)};
  const auto p = env.TriggeringProbs(trial.action, trial.mu);
  EXPECT_EQ(SmoothnessLhs(env, trial), 0.0);
  EXPECT_EQ(SmoothnessRhs(Condition::kTpm, {0, 1, 1}, trial, p), 0.0);
  EXPECT_EQ(SmoothnessRhs(Condition::kTpvmDirectional, {1, 1, 2}, trial, p),
            0.0);
  EXPECT_EQ(SmoothnessRatio(0.0, 0.0), 0.0);
  EXPECT_TRUE(std::isinf(SmoothnessRatio(1e-6, 0.0)));
}

TEST(SmoothnessTest, SampledTrialsStayInterior) {
  for (bool directional : {true, false}) {
    CascadeEnvironment env = Cascade(CascadeMode::kConjunctive, 2);
    Rng rng(3);
    for (int t = 0; t < 2000; ++t) {
      const auto trial = SampleTrial(env, directional, rng);
      const auto arms = env.ActionArms(trial.action);
      const auto after = trial.Perturbed();
      for (int i = 0; i < env.NumArms(); ++i) {
        ASSERT_GT(after[i], 0.0);
        ASSERT_LT(after[i], 1.0);
        if (directional) {
          ASSERT_GE(trial.zeta[i], 0.0);
          ASSERT_GE(trial.eta[i], 0.0);
        }
        if (std::find(arms.begin(), arms.end(), i) == arms.end()) {
          ASSERT_EQ(trial.zeta[i], 0.0);
          ASSERT_EQ(trial.eta[i], 0.0);
        }
      }
    }
  }
}

TEST(CheckTpmTest, DisjunctiveBoundHoldsAndTightCoefficientFails) {
  CascadeEnvironment env = Cascade(CascadeMode::kDisjunctive, 4);
  Rng rng(5);
  const auto ok = CheckTpm(env, 1.0, 20000, rng);
  EXPECT_EQ(ok.violation_count, 0) << ToJson(ok);
  Rng rng2(5);
  const auto bad = CheckTpm(env, 0.01, 2000, rng2);
  EXPECT_GT(bad.violation_count, 0);
  EXPECT_FALSE(bad.violations.empty());
  EXPECT_GT(bad.max_ratio, 1.0 + bad.tolerance);
}

TEST(CheckTpvmTest, CascadesPassTableCoefficients) {
  Rng rng(6);
  const auto dis = CheckTpvm(Cascade(CascadeMode::kDisjunctive, 7), {1, 1, 2},
                             true, 20000, rng);
  EXPECT_EQ(dis.violation_count, 0) << ToJson(dis);
  const auto con = CheckTpvm(Cascade(CascadeMode::kConjunctive, 8), {1, 1, 1},
                             false, 20000, rng);
  EXPECT_EQ(con.violation_count, 0) << ToJson(con);
  EXPECT_THROW(CheckTpvm(Cascade(CascadeMode::kConjunctive, 8), {1, 1, 0.5},
                         false, 10, rng),
               std::invalid_argument);
}

TEST(CheckTpvmTest, ViolationsIffRatioAboveTolerance) {
  for (double bv : {0.01, 0.2, 1.0}) {
    Rng rng(9);
    const auto r = CheckTpvm(Cascade(CascadeMode::kDisjunctive, 10),
                             {bv, 0.01, 2}, true, 3000, rng);
    EXPECT_EQ(r.violations.empty(), !(r.max_ratio > 1.0 + r.tolerance));
    EXPECT_LE(r.violations.size(), SmoothnessReport::kMaxStoredViolations);
  }
}

TEST(CheckTpvmTest, LargerLambdaPassImpliesSmallerLambdaPass) {
  CascadeEnvironment env = Cascade(CascadeMode::kDisjunctive, 11);
  for (double bv : {0.3, 0.6, 1.0}) {
    Rng a(12), b(12);
    const auto hi = CheckTpvm(env, {bv, 0.5, 2.0}, true, 5000, a);
    const auto lo = CheckTpvm(env, {bv, 0.5, 1.0}, true, 5000, b);
    // p^2 <= p, so every trial's RHS can only grow as lambda shrinks.
    EXPECT_LE(lo.violation_count, hi.violation_count);
    EXPECT_LE(lo.max_ratio, hi.max_ratio + 1e-12);
  }
}

TEST(CheckTpvmTest, TpmImpliesDirectionalTpvm) {
  // A TPM(B1) pass implies directional TPVM(B1 sqrt(K)/2, B1, 2) on the
  // same trial set.
  for (auto mode : {CascadeMode::kDisjunctive, CascadeMode::kConjunctive}) {
    CascadeEnvironment env = Cascade(mode, 13);
    const double b1 = 1.0;
    Rng a(14), b(14);
    const auto tpm = CheckTpm(env, b1, 10000, a, /*directional=*/true);
    ASSERT_EQ(tpm.violation_count, 0) << ToJson(tpm);
    const double bv = b1 * std::sqrt(static_cast<double>(env.BatchSize())) / 2;
    const auto tpvm = CheckTpvm(env, {bv, b1, 2.0}, true, 10000, b);
    EXPECT_EQ(tpvm.violation_count, 0) << ToJson(tpvm);
  }
}

TEST(CheckVmTest, PmcProofValuePassesAndSmallCoefficientFails) {
  PmcEnvironment env = Pmc(6, 5, 3, 15);
  const auto entry = CoefficientTable(Application::kPmc, SizesOf(env), true);
  Rng rng(16);
  const auto ok = CheckVm(env, entry.coeffs.bv, 1.0, 20000, rng);
  EXPECT_EQ(ok.violation_count, 0) << ToJson(ok);
  // Near-uniform means with a vanishing linear term.
  PmcInstance flat{4, 6, std::vector<double>(24, 0.5), 2};
  PmcEnvironment flat_env(flat);
  Rng rng2(17);
  const auto bad = CheckVm(flat_env, 0.1, 0.0, 2000, rng2);
  EXPECT_GT(bad.violation_count, 0);
  CascadeEnvironment cascade = Cascade(CascadeMode::kDisjunctive, 1);
  EXPECT_THROW(CheckVm(cascade, 1, 1, 10, rng), std::invalid_argument);
}

TEST(CheckTpvmTest, MulaneTableCoefficients) {
  MulaneInstance inst;
  inst.layers = 2;
  inst.targets = 4;
  inst.budget = 3;
  Rng gen(18);
  for (int c = 0; c < 8; ++c) {
    const double r = gen.Uniform(0.1, 0.6);
    for (int b = 0; b <= 3; ++b) inst.visit_prob.push_back(1 - std::pow(1 - r, b));
  }
  for (int u = 0; u < 4; ++u) inst.weight_means.push_back(gen.Uniform(0.1, 0.9));
  MulaneEnvironment env(inst);
  const auto entry = CoefficientTable(Application::kMulane, SizesOf(env));
  Rng rng(19);
  const auto r = CheckTpvm(env, entry.coeffs, false, 20000, rng);
  EXPECT_EQ(r.violation_count, 0) << ToJson(r);
}

TEST(CheckTpvmTest, OimUsesMonteCarloTriggering) {
  DagImInstance dag(5, {{0, 1, 0.5}, {1, 2, 0.4}, {0, 3, 0.3}, {3, 4, 0.6},
                        {2, 4, 0.2}}, 1);
  DagImEnvironment env(dag);
  const auto entry = CoefficientTable(Application::kOimDag, SizesOf(env));
  CheckOptions options;
  options.n_sim = 2000;
  Rng rng(20);
  const auto r = CheckTpvm(env, entry.coeffs, true, 300, rng, options);
  EXPECT_TRUE(r.monte_carlo_triggering);
  EXPECT_EQ(r.violation_count, 0) << ToJson(r);
}

TEST(SmoothnessTest, ReproducibleUnderFixedSeed) {
  PmcEnvironment env = Pmc(5, 4, 2, 21);
  Rng a(22), b(22);
  const auto r1 = CheckVm(env, 0.5, 0.5, 3000, a);
  const auto r2 = CheckVm(env, 0.5, 0.5, 3000, b);
  EXPECT_EQ(r1.max_ratio, r2.max_ratio);
  EXPECT_EQ(ToJson(r1), ToJson(r2));
}

TEST(CoefficientTableTest, Rows) {
  auto row = CoefficientTable(Application::kDisjunctive, {});
  EXPECT_EQ(row.condition, Condition::kTpvmDirectional);
  EXPECT_EQ(row.coeffs.bv, 1.0);
  EXPECT_EQ(row.coeffs.b1, 1.0);
  EXPECT_EQ(row.coeffs.lambda, 2.0);
  row = CoefficientTable(Application::kConjunctive, {});
  EXPECT_EQ(row.condition, Condition::kTpvmUndirectional);
  EXPECT_EQ(row.coeffs.lambda, 1.0);
  row = CoefficientTable(Application::kMulane, {20, 0});
  EXPECT_NEAR(row.coeffs.bv, 5.0, 1e-15);
  EXPECT_EQ(row.coeffs.lambda, 2.0);
  row = CoefficientTable(Application::kOimDag, {10, 4});
  EXPECT_EQ(row.coeffs.bv, 20.0);
  EXPECT_EQ(row.coeffs.b1, 10.0);
  EXPECT_EQ(row.coeffs.lambda, 1.0);
  row = CoefficientTable(Application::kPmc, {20, 0});
  EXPECT_EQ(row.condition, Condition::kVm);
  EXPECT_NEAR(row.coeffs.bv, 3 * std::sqrt(40.0), 1e-12);
  EXPECT_FALSE(row.has_lambda);
  row = CoefficientTable(Application::kPmc, {20, 0}, true);
  EXPECT_NEAR(row.coeffs.bv, 3 * std::sqrt(10.0), 1e-12);
  EXPECT_THROW(ParseApplication("tsp"), ConfigError);
}

TEST(SubgaussianC1Test, PointValues) {
  EXPECT_EQ(SubgaussianC1At(0.5), 1.0);
  EXPECT_NEAR(SubgaussianC1At(0.25), 0.5 / (2 * std::log(3.0) * 0.1875), 1e-12);
  EXPECT_NEAR(SubgaussianC1At(0.25), 1.2137, 1e-4);
  // Continuous through 1/2.
  EXPECT_NEAR(SubgaussianC1At(0.5 + 1e-9), 1.0, 1e-8);
  // Symmetric in mu <-> 1 - mu.
  EXPECT_NEAR(SubgaussianC1At(0.1), SubgaussianC1At(0.9), 1e-12);
}

TEST(SubgaussianC1Test, GridMaximum) {
  EXPECT_NEAR(BernoulliSubgaussianC1(0.01, 0.99), 10.78, 0.05);
  // Smallest at 1/2, so the maximum sits at an endpoint.
  EXPECT_NEAR(BernoulliSubgaussianC1(0.4, 0.6), SubgaussianC1At(0.4), 1e-12);
  EXPECT_THROW(BernoulliSubgaussianC1(0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(BernoulliSubgaussianC1(0.6, 0.5), std::invalid_argument);
}

}  // namespace
}  // namespace cmabt
