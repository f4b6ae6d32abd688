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
#include <limits>
#include <stdexcept>
#include <string>

#include "cmabt/dag_im.h"
#include "cmabt/errors.h"
#include "cmabt/mulane.h"
#include "cmabt/pmc.h"
#include "json.hpp"

namespace cmabt {

namespace {

constexpr double kMuLo = 0.02;
constexpr double kMuHi = 0.98;
constexpr double kEdge = 1e-6;  // distance kept from 0 and 1

}  // namespace

std::string_view ToString(Condition condition) {
  switch (condition) {
    case Condition::kTpm:
      return "tpm";
    case Condition::kTpvmDirectional:
      return "tpvm_directional";
    case Condition::kTpvmUndirectional:
      return "tpvm_undirectional";
    case Condition::kVm:
      return "vm";
  }
  return "unknown";
}

Condition ParseCondition(std::string_view name) {
  for (auto c : {Condition::kTpm, Condition::kTpvmDirectional,
                 Condition::kTpvmUndirectional, Condition::kVm}) {
    if (ToString(c) == name) return c;
  }
  throw ConfigError("unknown condition '" + std::string(name) + "'");
}

std::vector<double> SmoothnessTrial::Perturbed() const {
  std::vector<double> out(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) out[i] = mu[i] + zeta[i] + eta[i];
  return out;
}

SmoothnessTrial SampleTrial(const Environment& env, bool directional,
                            Rng& rng) {
  const int m = env.NumArms();
  SmoothnessTrial trial{env.RandomAction(rng), std::vector<double>(m),
                        std::vector<double>(m, 0.0),
                        std::vector<double>(m, 0.0)};
  for (double& x : trial.mu) x = rng.Uniform(kMuLo, kMuHi);

  const std::vector<int> arms = env.ActionArms(trial.action);
  if (arms.empty()) return trial;
  // 0: every triggerable arm, 1: a random fraction, 2: a single arm.
  const auto mode = rng.UniformIndex(3);
  const double keep = rng.Uniform();
  const int single = arms[rng.UniformIndex(arms.size())];
  // Share of the perturbation carried by zeta: all, none or random.
  const auto split_mode = rng.UniformIndex(3);

  for (int i : arms) {
    const bool perturb = mode == 0 || (mode == 1 && rng.Uniform() < keep) ||
                         (mode == 2 && i == single);
    if (!perturb) continue;
    const double scale = std::pow(10.0, rng.Uniform(-4.0, 0.0));
    const double w = split_mode == 0 ? 1.0
                     : split_mode == 1 ? 0.0
                                       : rng.Uniform();
    const double mu = trial.mu[i];
    const double up = 1.0 - kEdge - mu;
    const double down = mu - kEdge;
    if (directional) {
      trial.zeta[i] = w * scale * up;
      trial.eta[i] = (1.0 - w) * scale * up;
    } else {
      const bool zeta_up = rng.Bernoulli(0.5);
      const bool eta_up = rng.Bernoulli(0.5);
      trial.zeta[i] = (zeta_up ? up : -down) * w * scale;
      trial.eta[i] = (eta_up ? up : -down) * (1.0 - w) * scale;
    }
  }
  return trial;
}

double SmoothnessLhs(const Environment& env, const SmoothnessTrial& trial) {
  const auto perturbed = trial.Perturbed();
  return std::abs(env.ExpectedReward(trial.action, perturbed) -
                  env.ExpectedReward(trial.action, trial.mu));
}

double SmoothnessRhs(Condition condition, const Coefficients& coeffs,
                     const SmoothnessTrial& trial, std::span<const double> p) {
  const std::size_t m = trial.mu.size();
  if (condition == Condition::kTpm) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sum += p[i] * std::abs(trial.zeta[i] + trial.eta[i]);
    }
    return coeffs.b1 * sum;
  }
  double variance_sum = 0.0;
  double linear_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (p[i] == 0.0) continue;
    const double mu = trial.mu[i];
    const double weight =
        condition == Condition::kVm ? p[i] : std::pow(p[i], coeffs.lambda);
    variance_sum += weight * trial.zeta[i] * trial.zeta[i] / ((1.0 - mu) * mu);
    linear_sum += p[i] * (condition == Condition::kTpvmDirectional
                              ? trial.eta[i]
                              : std::abs(trial.eta[i]));
  }
  return coeffs.bv * std::sqrt(variance_sum) + coeffs.b1 * linear_sum;
}

double SmoothnessRatio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs > 1e-12 ? std::numeric_limits<double>::infinity() : 0.0;
}

namespace {

constexpr double kRoundoffUlps = 8.0;

// Upper confidence value for a Monte-Carlo triggering probability.
double UpperBound(double p_hat, int n_sim, double sigmas) {
  const double n = static_cast<double>(n_sim);
  const double var = std::max(p_hat * (1.0 - p_hat), 1.0 / n);
  return std::min(1.0, p_hat + sigmas * std::sqrt(var / n));
}

SmoothnessReport RunTrials(const Environment& env, Condition condition,
                           const Coefficients& coeffs, bool directional,
                           std::int64_t trials, Rng& rng,
                           const CheckOptions& options) {
  SmoothnessReport report;
  report.condition = condition;
  report.coeffs = coeffs;
  report.trials = trials;
  report.tolerance = options.tolerance;
  report.monte_carlo_triggering =
      condition != Condition::kVm && !env.HasAnalyticTriggering();

  for (std::int64_t t = 0; t < trials; ++t) {
    const SmoothnessTrial trial = SampleTrial(env, directional, rng);
    // Drawn on every trial so trial sets match across conditions.
    const std::uint64_t mc_seed = rng.NextU64();

    std::vector<double> p;
    if (condition == Condition::kVm) {
      p.assign(env.NumArms(), 0.0);
      for (int arm : env.ActionArms(trial.action)) p[arm] = 1.0;
    } else if (report.monte_carlo_triggering) {
      Rng mc_rng(mc_seed);
      p = env.EstimateTriggeringProbs(trial.action, trial.mu, options.n_sim,
                                      mc_rng);
      std::vector<char> reachable(p.size(), 0);
      for (int arm : env.ActionArms(trial.action)) reachable[arm] = 1;
      for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = reachable[i]
                   ? UpperBound(p[i], options.n_sim, options.sigma_threshold)
                   : 0.0;
      }
    } else {
      p = env.TriggeringProbs(trial.action, trial.mu);
    }

    const double r_before = env.ExpectedReward(trial.action, trial.mu);
    const double r_after = env.ExpectedReward(trial.action, trial.Perturbed());
    const double lhs = std::abs(r_after - r_before);
    // Rounding in the two reward evaluations is not a violation.
    const double slack = kRoundoffUlps * std::numeric_limits<double>::epsilon() *
                         (std::abs(r_before) + std::abs(r_after));
    const double rhs = SmoothnessRhs(condition, coeffs, trial, p);
    const double ratio = SmoothnessRatio(std::max(lhs - slack, 0.0), rhs);
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (ratio > 1.0 + options.tolerance) {
      ++report.violation_count;
      if (report.violations.size() < SmoothnessReport::kMaxStoredViolations) {
        report.violations.push_back({ToString(trial.action), trial.mu,
                                     trial.zeta, trial.eta, lhs, rhs});
      }
    }
  }
  return report;
}

}  // namespace

SmoothnessReport CheckTpm(const Environment& env, double b1,
                          std::int64_t trials, Rng& rng, bool directional,
                          const CheckOptions& options) {
  return RunTrials(env, Condition::kTpm, {0.0, b1, 1.0}, directional, trials,
                   rng, options);
}

SmoothnessReport CheckTpvm(const Environment& env, const Coefficients& coeffs,
                           bool directional, std::int64_t trials, Rng& rng,
                           const CheckOptions& options) {
  if (!(coeffs.lambda >= 1.0)) {
    throw std::invalid_argument("check_tpvm: lambda must be >= 1");
  }
  return RunTrials(env,
                   directional ? Condition::kTpvmDirectional
                               : Condition::kTpvmUndirectional,
                   coeffs, directional, trials, rng, options);
}

SmoothnessReport CheckVm(const Environment& env, double bv, double b1,
                         std::int64_t trials, Rng& rng,
                         const CheckOptions& options) {
  if (env.IsTriggering()) {
    throw std::invalid_argument(
        "check_vm: environment has probabilistic triggering");
  }
  return RunTrials(env, Condition::kVm, {bv, b1, 1.0}, false, trials, rng,
                   options);
}

SmoothnessReport RunCheck(const Environment& env, Condition condition,
                          const Coefficients& coeffs, std::int64_t trials,
                          Rng& rng, const CheckOptions& options) {
  switch (condition) {
    case Condition::kTpm:
      return CheckTpm(env, coeffs.b1, trials, rng, false, options);
    case Condition::kTpvmDirectional:
      return CheckTpvm(env, coeffs, true, trials, rng, options);
    case Condition::kTpvmUndirectional:
      return CheckTpvm(env, coeffs, false, trials, rng, options);
    case Condition::kVm:
      return CheckVm(env, coeffs.bv, coeffs.b1, trials, rng, options);
  }
  throw std::logic_error("unhandled condition");
}

namespace {

nlohmann::json Number(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

std::string ToJson(const SmoothnessReport& report, int indent) {
  nlohmann::ordered_json j;
  j["condition"] = ToString(report.condition);
  j["coeffs"] = {{"bv", report.coeffs.bv},
                 {"b1", report.coeffs.b1},
                 {"lambda", report.coeffs.lambda}};
  j["trials"] = report.trials;
  j["tolerance"] = report.tolerance;
  j["monte_carlo_triggering"] = report.monte_carlo_triggering;
  j["violation_count"] = report.violation_count;
  j["max_ratio"] = Number(report.max_ratio);
  j["passed"] = report.violation_count == 0;
  auto& list = j["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    list.push_back({{"action", v.action},
                    {"mu", v.mu},
                    {"zeta", v.zeta},
                    {"eta", v.eta},
                    {"lhs", v.lhs},
                    {"rhs", Number(v.rhs)}});
  }
  return j.dump(indent);
}

std::string_view ToString(Application application) {
  switch (application) {
    case Application::kDisjunctive:
      return "disjunctive";
    case Application::kConjunctive:
      return "conjunctive";
    case Application::kMulane:
      return "mulane";
    case Application::kOimDag:
      return "oim_dag";
    case Application::kPmc:
      return "pmc";
  }
  return "unknown";
}

Application ParseApplication(std::string_view name) {
  for (auto a : {Application::kDisjunctive, Application::kConjunctive,
                 Application::kMulane, Application::kOimDag,
                 Application::kPmc}) {
    if (ToString(a) == name) return a;
  }
  throw ConfigError("unknown application '" + std::string(name) + "'");
}

TableEntry CoefficientTable(Application application, const InstanceSizes& sizes,
                            bool pmc_proof_value) {
  const double v = sizes.targets;
  switch (application) {
    case Application::kDisjunctive:
      return {application, Condition::kTpvmDirectional, {1.0, 1.0, 2.0}, true};
    case Application::kConjunctive:
      return {application, Condition::kTpvmUndirectional, {1.0, 1.0, 1.0},
              true};
    case Application::kMulane:
      return {application, Condition::kTpvmUndirectional,
              {std::sqrt(1.25 * v), 1.0, 2.0}, true};
    case Application::kOimDag:
      return {application,
              Condition::kTpvmDirectional,
              {std::sqrt(static_cast<double>(sizes.longest_path)) * v, v, 1.0},
              true};
    case Application::kPmc:
      return {application, Condition::kVm,
              {pmc_proof_value ? 3.0 * std::sqrt(v / 2.0)
                               : 3.0 * std::sqrt(2.0 * v),
               1.0, 1.0},
              false};
  }
  throw ConfigError("unknown application");
}

InstanceSizes SizesOf(const Environment& env) {
  if (const auto* pmc = dynamic_cast<const PmcEnvironment*>(&env)) {
    return {pmc->instance().num_targets, 0};
  }
  if (const auto* mulane = dynamic_cast<const MulaneEnvironment*>(&env)) {
    return {mulane->instance().targets, 0};
  }
  if (const auto* dag = dynamic_cast<const DagImEnvironment*>(&env)) {
    return {dag->dag().num_nodes(), dag->dag().LongestPathLength()};
  }
  return {};
}

double SubgaussianC1At(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw std::invalid_argument("C1: mu must lie in (0, 1)");
  }
  // With d = 1 - 2 mu, ln((1 - mu) / mu) = 2 atanh(d).
  const double d = 1.0 - 2.0 * mu;
  if (d == 0.0) return 1.0;
  return d / (4.0 * std::atanh(d) * (1.0 - mu) * mu);
}

double BernoulliSubgaussianC1(double mu_lo, double mu_hi, int grid_points) {
  if (!(mu_lo > 0.0 && mu_lo <= mu_hi && mu_hi < 1.0)) {
    throw std::invalid_argument("C1: need 0 < mu_lo <= mu_hi < 1");
  }
  if (grid_points < 2) throw std::invalid_argument("C1: grid too coarse");
  double best = SubgaussianC1At(mu_lo);
  for (int j = 1; j < grid_points; ++j) {
    const double mu = mu_lo + (mu_hi - mu_lo) * j / (grid_points - 1);
    best = std::max(best, SubgaussianC1At(mu));
  }
  if (mu_lo <= 0.5 && 0.5 <= mu_hi) best = std::max(best, 1.0);
  return best;
}

}  // namespace cmabt
