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

#include "cmabt/policies.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cmabt/errors.h"

namespace cmabt {

std::string_view ToString(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kCucb:
      return "cucb";
    case PolicyKind::kBcucbT:
      return "bcucb_t";
    case PolicyKind::kEscb:
      return "escb";
    case PolicyKind::kSescb:
      return "sescb";
    case PolicyKind::kSescbSubmodular:
      return "sescb_submodular";
  }
  return "unknown";
}

PolicyKind ParsePolicyKind(std::string_view name) {
  for (auto kind : {PolicyKind::kCucb, PolicyKind::kBcucbT, PolicyKind::kEscb,
                    PolicyKind::kSescb, PolicyKind::kSescbSubmodular}) {
    if (ToString(kind) == name) return kind;
  }
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

double CucbRadius(std::int64_t count, double t, double alpha_rho) {
  if (count == 0) return kInfiniteRadius;
  return alpha_rho *
         std::sqrt(3.0 * std::log(t) / (2.0 * static_cast<double>(count)));
}

double SescbParams::LogTerm() const {
  return std::log(2.0) + log_action_count +
         std::log(static_cast<double>(horizon));
}

namespace {

struct RadiusTerms {
  double inverse_sum = 0.0;  // sum C1 / n_i
  double sqrt_term = 0.0;    // 8 C1 sqrt(sum L / n_i^2)
  double min_term = 0.0;     // 8 C1 L / n_min
};

RadiusTerms ComputeTerms(std::span<const std::int64_t> counts,
                         const SescbParams& params) {
  const double log_term = params.LogTerm();
  double inverse = 0.0;
  double inverse_sq = 0.0;
  std::int64_t n_min = 0;
  for (std::int64_t n : counts) {
    if (n <= 0) throw UninitializedArmError("sescb radius: uninitialized arm");
    const double x = 1.0 / static_cast<double>(n);
    inverse += x;
    inverse_sq += x * x;
    n_min = n_min == 0 ? n : std::min(n_min, n);
  }
  RadiusTerms terms;
  terms.inverse_sum = params.c1 * inverse;
  terms.sqrt_term = 8.0 * params.c1 * std::sqrt(log_term * inverse_sq);
  terms.min_term = 8.0 * params.c1 * log_term / static_cast<double>(n_min);
  return terms;
}

}  // namespace

double SescbRadius(std::span<const std::int64_t> counts,
                   const SescbParams& params) {
  if (counts.empty()) return 0.0;
  const auto terms = ComputeTerms(counts, params);
  return params.alpha_rho * params.bv *
         std::sqrt(terms.inverse_sum + std::max(terms.sqrt_term, terms.min_term));
}

double SescbSubmodularRadius(std::span<const std::int64_t> counts,
                             const SescbParams& params) {
  if (counts.empty()) return 0.0;
  const auto terms = ComputeTerms(counts, params);
  return params.alpha_rho * params.bv *
         std::sqrt(terms.inverse_sum + terms.sqrt_term + terms.min_term);
}

double EscbBonus(std::span<const std::int64_t> counts, double t,
                 double alpha_rho) {
  double inverse = 0.0;
  for (std::int64_t n : counts) {
    if (n <= 0) throw UninitializedArmError("escb bonus: uninitialized arm");
    inverse += 1.0 / static_cast<double>(n);
  }
  return alpha_rho * std::sqrt(0.5 * std::log(t) * inverse);
}

Policy::Policy(const Environment& env, PolicyConfig config)
    : env_(env), config_(std::move(config)), stats_(env.NumArms()) {
  if (!(config_.alpha_rho >= 0.0)) {
    throw ConfigError("alpha_rho must be non-negative");
  }
}

void Policy::Observe(const RoundFeedback& feedback) {
  for (const auto& obs : feedback.triggered) {
    if (obs.arm < 0 || obs.arm >= static_cast<int>(stats_.size())) {
      throw std::out_of_range("feedback names an unknown arm");
    }
    stats_[obs.arm] = UpdateStats(stats_[obs.arm], obs.outcome);
  }
  ++round_;
}

StepResult Policy::Step(Rng& env_rng) {
  StepResult result{SelectAction(), {}};
  result.feedback = env_.Play(result.action, env_rng);
  Observe(result.feedback);
  return result;
}

std::vector<std::int64_t> Policy::Counts() const {
  std::vector<std::int64_t> counts(stats_.size());
  for (std::size_t i = 0; i < stats_.size(); ++i) counts[i] = stats_[i].count;
  return counts;
}

ArmIndexPolicy::ArmIndexPolicy(const Environment& env, PolicyConfig config,
                               std::uint64_t oracle_seed)
    : Policy(env, std::move(config)), oracle_seed_(oracle_seed) {
  if (config_.kind != PolicyKind::kCucb && config_.kind != PolicyKind::kBcucbT) {
    throw std::invalid_argument("ArmIndexPolicy: not an arm-index policy");
  }
}

std::vector<double> ArmIndexPolicy::UcbVector() const {
  const double t = CurrentTime();
  std::vector<double> ucb(stats_.size());
  for (std::size_t i = 0; i < stats_.size(); ++i) {
    ucb[i] = config_.kind == PolicyKind::kCucb
                 ? ClippedUcb(stats_[i].mean,
                              CucbRadius(stats_[i].count, t, config_.alpha_rho))
                 : UcbValue(stats_[i], t, config_.alpha_rho);
  }
  return ucb;
}

Action ArmIndexPolicy::SelectAction() {
  return SolveForArmValues(env_, config_.oracle, UcbVector(),
                           DeriveSeed(oracle_seed_, round_));
}

SuperArmIndexPolicy::SuperArmIndexPolicy(const Environment& env,
                                         PolicyConfig config)
    : Policy(env, std::move(config)) {
  const auto kind = config_.kind;
  if (kind != PolicyKind::kEscb && kind != PolicyKind::kSescb &&
      kind != PolicyKind::kSescbSubmodular) {
    throw std::invalid_argument("SuperArmIndexPolicy: not a super-arm policy");
  }
  const auto oracle = config_.oracle.kind;
  if (kind == PolicyKind::kEscb && oracle != OracleKind::kEnumeration) {
    throw ConfigError("ESCB requires enumeration");
  }
  if (kind == PolicyKind::kSescb && oracle != OracleKind::kEnumeration) {
    throw ConfigError(
        "sescb requires the enumeration oracle; use sescb_submodular for "
        "greedy maximization");
  }
  if (oracle != OracleKind::kEnumeration &&
      oracle != OracleKind::kGreedySubmodular) {
    throw ConfigError(std::string(ToString(config_.kind)) +
                      " supports the enumeration and greedy_submodular "
                      "oracles only");
  }
  if (kind != PolicyKind::kEscb && config_.horizon < 1) {
    throw ConfigError("SESCB needs a horizon T >= 1");
  }
  if (oracle == OracleKind::kEnumeration) {
    auto actions = env_.EnumerateActions(kEnumerationLimit);
    if (!actions) {
      throw OracleError(kind == PolicyKind::kEscb
                            ? std::string("ESCB requires enumeration")
                            : std::string(env_.Kind()) +
                                  ": action space too large to enumerate");
    }
    actions_ = std::move(*actions);
    action_arms_.reserve(actions_.size());
    for (const auto& a : actions_) action_arms_.push_back(env_.ActionArms(a));
  }
  sescb_.bv = config_.bv;
  sescb_.c1 = config_.c1;
  sescb_.log_action_count = env_.LogActionCount();
  sescb_.horizon = std::max<std::int64_t>(config_.horizon, 1);
  sescb_.alpha_rho = config_.alpha_rho;
}

bool SuperArmIndexPolicy::InInitialization() const {
  return std::any_of(stats_.begin(), stats_.end(),
                     [](const ArmStats& s) { return s.count == 0; });
}

double SuperArmIndexPolicy::Bonus(std::span<const int> arms) const {
  std::vector<std::int64_t> counts;
  counts.reserve(arms.size());
  for (int arm : arms) counts.push_back(stats_[arm].count);
  switch (config_.kind) {
    case PolicyKind::kEscb:
      return EscbBonus(counts, CurrentTime(), config_.alpha_rho);
    case PolicyKind::kSescb:
      return SescbRadius(counts, sescb_);
    default:
      return SescbSubmodularRadius(counts, sescb_);
  }
}

double SuperArmIndexPolicy::OptimisticValue(const Action& action,
                                            std::span<const int> arms) const {
  std::vector<double> means(stats_.size());
  for (std::size_t i = 0; i < stats_.size(); ++i) means[i] = stats_[i].mean;
  return env_.ExpectedReward(action, means) + Bonus(arms);
}

double SuperArmIndexPolicy::OptimisticValue(const Action& action) const {
  return OptimisticValue(action, env_.ActionArms(action));
}

Action SuperArmIndexPolicy::SelectAction() {
  if (InInitialization()) return env_.CoverUnobserved(Counts());

  std::vector<double> means(stats_.size());
  for (std::size_t i = 0; i < stats_.size(); ++i) means[i] = stats_[i].mean;

  if (!actions_.empty()) {
    std::size_t best = 0;
    double best_value = -kInfiniteRadius;
    for (std::size_t a = 0; a < actions_.size(); ++a) {
      const double v =
          env_.ExpectedReward(actions_[a], means) + Bonus(action_arms_[a]);
      // actions_ is in lexicographic order, so strict > keeps the smallest.
      if (v > best_value) {
        best_value = v;
        best = a;
      }
    }
    return actions_[best];
  }
  return SolveForActionValues(
      env_, config_.oracle, nullptr, [&](const Action& action) {
        return env_.ExpectedReward(action, means) +
               Bonus(env_.ActionArms(action));
      });
}

std::unique_ptr<Policy> MakePolicy(const Environment& env,
                                   const PolicyConfig& config,
                                   std::uint64_t oracle_seed) {
  switch (config.kind) {
    case PolicyKind::kCucb:
    case PolicyKind::kBcucbT:
      return std::make_unique<ArmIndexPolicy>(env, config, oracle_seed);
    default:
      return std::make_unique<SuperArmIndexPolicy>(env, config);
  }
}

}  // namespace cmabt
