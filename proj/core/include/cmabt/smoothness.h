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

#ifndef CMABT_SMOOTHNESS_H_
#define CMABT_SMOOTHNESS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmabt/environment.h"

namespace cmabt {

enum class Condition { kTpm, kTpvmDirectional, kTpvmUndirectional, kVm };

std::string_view ToString(Condition condition);
Condition ParseCondition(std::string_view name);  // throws ConfigError

struct Coefficients {
  double bv = 0.0;
  double b1 = 0.0;
  double lambda = 1.0;
};

// One sampled instance of the smoothness inequality: mu' = mu + zeta + eta.
// Only arms that the action can trigger are perturbed.
struct SmoothnessTrial {
  Action action;
  std::vector<double> mu;
  std::vector<double> zeta;
  std::vector<double> eta;

  std::vector<double> Perturbed() const;
};

struct Violation {
  std::string action;
  std::vector<double> mu;
  std::vector<double> zeta;
  std::vector<double> eta;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct SmoothnessReport {
  Condition condition = Condition::kTpm;
  Coefficients coeffs;
  std::int64_t trials = 0;
  double tolerance = 0.0;
  bool monte_carlo_triggering = false;
  std::int64_t violation_count = 0;
  std::vector<Violation> violations;  // the first kMaxStoredViolations
  // Max over trials of lhs / rhs, with lhs first reduced by the rounding
  // error of its two reward evaluations (8 ulp of |r| + |r'|).
  double max_ratio = 0.0;

  static constexpr std::size_t kMaxStoredViolations = 16;
};

struct CheckOptions {
  double tolerance = 1e-9;
  // Monte-Carlo triggering estimates (environments without closed forms).
  int n_sim = 10000;
  double sigma_threshold = 4.0;
};

// mu uniform over [0.02, 0.98] per arm; perturbations on the action's
// triggerable arms keep mu' inside (0, 1). Directional trials have
// zeta, eta >= 0; undirectional ones draw signs independently.
SmoothnessTrial SampleTrial(const Environment& env, bool directional,
                            Rng& rng);

// |r(S; mu') - r(S; mu)|.
double SmoothnessLhs(const Environment& env, const SmoothnessTrial& trial);

// Right-hand side of the condition for this trial given triggering
// probabilities p (indexed by arm).
double SmoothnessRhs(Condition condition, const Coefficients& coeffs,
                     const SmoothnessTrial& trial, std::span<const double> p);

// lhs / rhs with 0/0 = 0 and x/0 = inf for x > 1e-12.
double SmoothnessRatio(double lhs, double rhs);

// |r(S;mu') - r(S;mu)| <= B1 sum p_i |mu_i - mu'_i|, sampled undirectionally
// unless `directional` is set.
SmoothnessReport CheckTpm(const Environment& env, double b1,
                          std::int64_t trials, Rng& rng,
                          bool directional = false,
                          const CheckOptions& options = {});

// |r(S;mu') - r(S;mu)| <= B_v sqrt(sum p_i^lambda zeta_i^2 / ((1-mu_i) mu_i))
//                         + B_1 sum p_i eta_i   (|eta_i| undirectionally).
// Throws std::invalid_argument for lambda < 1.
SmoothnessReport CheckTpvm(const Environment& env, const Coefficients& coeffs,
                           bool directional, std::int64_t trials, Rng& rng,
                           const CheckOptions& options = {});

// Non-triggering variant with p_i replaced by 1{i in S}. Throws
// std::invalid_argument for a triggering environment.
SmoothnessReport CheckVm(const Environment& env, double bv, double b1,
                         std::int64_t trials, Rng& rng,
                         const CheckOptions& options = {});

SmoothnessReport RunCheck(const Environment& env, Condition condition,
                          const Coefficients& coeffs, std::int64_t trials,
                          Rng& rng, const CheckOptions& options = {});

std::string ToJson(const SmoothnessReport& report, int indent = 2);

enum class Application { kDisjunctive, kConjunctive, kMulane, kOimDag, kPmc };

std::string_view ToString(Application application);
Application ParseApplication(std::string_view name);  // throws ConfigError

struct InstanceSizes {
  int targets = 0;       // |V|
  int longest_path = 0;  // L, for influence maximization on DAGs
};

struct TableEntry {
  Application application = Application::kDisjunctive;
  Condition condition = Condition::kTpvmDirectional;
  Coefficients coeffs;
  bool has_lambda = true;  // false for VM rows
};

// Published (B_v, B_1, lambda) per application. For PMC the table value is
// 3 sqrt(2|V|); `pmc_proof_value` selects 3 sqrt(|V|/2) instead.
TableEntry CoefficientTable(Application application, const InstanceSizes& sizes,
                            bool pmc_proof_value = false);

// Sizes read off a concrete environment (|V| of PMC/MuLaNE/DAG, L of a DAG).
InstanceSizes SizesOf(const Environment& env);

// (1 - 2 mu) / (2 ln((1 - mu)/mu) (1 - mu) mu), equal to 1 at mu = 1/2.
double SubgaussianC1At(double mu);

// Max of SubgaussianC1At over a uniform grid on [mu_lo, mu_hi] (endpoints
// included, plus 1/2 when inside). Throws std::invalid_argument unless
// 0 < mu_lo <= mu_hi < 1.
double BernoulliSubgaussianC1(double mu_lo, double mu_hi,
                              int grid_points = 10000);

}  // namespace cmabt

#endif  // CMABT_SMOOTHNESS_H_
