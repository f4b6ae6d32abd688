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

#ifndef CMABT_POLICIES_H_
#define CMABT_POLICIES_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "cmabt/arm_stats.h"
#include "cmabt/environment.h"
#include "cmabt/oracles.h"

namespace cmabt {

enum class PolicyKind { kCucb, kBcucbT, kEscb, kSescb, kSescbSubmodular };

std::string_view ToString(PolicyKind kind);
PolicyKind ParsePolicyKind(std::string_view name);  // throws ConfigError

struct PolicyConfig {
  PolicyKind kind = PolicyKind::kBcucbT;
  double alpha_rho = 1.0;   // multiplies every confidence radius
  double bv = 1.0;          // smoothness coefficient B_v (SESCB)
  double c1 = 1.0;          // sub-Gaussian constant C_1 (SESCB)
  std::int64_t horizon = 0; // T; required by SESCB
  OracleSpec oracle;
};

// Hoeffding radius alpha_rho * sqrt(3 ln t / (2 n)); infinite when n = 0.
double CucbRadius(std::int64_t count, double t, double alpha_rho = 1.0);

struct SescbParams {
  double bv = 1.0;
  double c1 = 1.0;
  double log_action_count = 0.0;  // ln |S|
  std::int64_t horizon = 1;       // T
  double alpha_rho = 1.0;

  // ln(2 |S| T)
  double LogTerm() const;
};

// Sub-exponential confidence width of a super arm:
//   B_v sqrt( sum C1/n_i + max{ 8 C1 sqrt(sum L/n_i^2), 8 C1 L / n_min } )
// with L = ln(2 |S| T), scaled by alpha_rho. `counts` holds the counters of
// the arms in S. Throws UninitializedArmError on a zero counter.
double SescbRadius(std::span<const std::int64_t> counts,
                   const SescbParams& params);

// Same with the max replaced by a sum; monotone submodular in S and within
// [1, sqrt 2] times SescbRadius. Zero for an empty S.
double SescbSubmodularRadius(std::span<const std::int64_t> counts,
                             const SescbParams& params);

// ESCB-style bonus alpha_rho * sqrt((ln t / 2) * sum 1/n_i). Throws
// UninitializedArmError on a zero counter.
double EscbBonus(std::span<const std::int64_t> counts, double t,
                 double alpha_rho = 1.0);

struct StepResult {
  Action action;
  RoundFeedback feedback;
};

// Online learner over one environment. Round indices start at 1.
class Policy {
 public:
  Policy(const Environment& env, PolicyConfig config);
  virtual ~Policy() = default;

  Policy(const Policy&) = delete;
  Policy& operator=(const Policy&) = delete;

  // Chooses the action for round round() + 1.
  virtual Action SelectAction() = 0;

  // Applies UpdateStats to every triggered arm and advances the round.
  void Observe(const RoundFeedback& feedback);

  // SelectAction, play on env(), Observe.
  StepResult Step(Rng& env_rng);

  // Completed rounds.
  std::int64_t round() const { return round_; }
  std::span<const ArmStats> stats() const { return stats_; }
  std::vector<std::int64_t> Counts() const;
  const PolicyConfig& config() const { return config_; }
  const Environment& env() const { return env_; }

 protected:
  // Round index t of the action being chosen.
  double CurrentTime() const { return static_cast<double>(round_ + 1); }

  const Environment& env_;
  PolicyConfig config_;
  std::vector<ArmStats> stats_;
  std::int64_t round_ = 0;
};

// CUCB and BCUCB-T: per-arm UCB indices fed to the oracle.
class ArmIndexPolicy final : public Policy {
 public:
  ArmIndexPolicy(const Environment& env, PolicyConfig config,
                 std::uint64_t oracle_seed);

  // Current UCB vector min(mean + radius, 1); 1 for unobserved arms.
  std::vector<double> UcbVector() const;
  Action SelectAction() override;

 private:
  std::uint64_t oracle_seed_;
};

// ESCB and SESCB: one optimistic index per super arm, after a covering
// sweep that observes every arm at least once.
class SuperArmIndexPolicy final : public Policy {
 public:
  SuperArmIndexPolicy(const Environment& env, PolicyConfig config);

  // True while some arm still has a zero counter.
  bool InInitialization() const;
  // r(S; mu_hat) + index bonus of S at the current round.
  double OptimisticValue(const Action& action) const;
  Action SelectAction() override;

 private:
  double Bonus(std::span<const int> arms) const;
  double OptimisticValue(const Action& action,
                         std::span<const int> arms) const;

  std::vector<Action> actions_;  // empty unless the oracle enumerates
  std::vector<std::vector<int>> action_arms_;  // ActionArms of actions_
  SescbParams sescb_;
};

std::unique_ptr<Policy> MakePolicy(const Environment& env,
                                   const PolicyConfig& config,
                                   std::uint64_t oracle_seed);

}  // namespace cmabt

#endif  // CMABT_POLICIES_H_
