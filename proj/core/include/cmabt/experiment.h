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

#ifndef CMABT_EXPERIMENT_H_
#define CMABT_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmabt/environment.h"
#include "cmabt/oracles.h"
#include "cmabt/policies.h"

namespace cmabt {

std::string_view LibraryVersion();

struct ExperimentConfig {
  std::string name;
  std::string environment_json;  // the "environment" block, verbatim
  std::filesystem::path base_dir;  // resolves instance_file references
  std::vector<PolicyConfig> policies;
  std::int64_t horizon = 0;
  int repetitions = 1;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
};

// Parses the experiment JSON. Policy entries inherit top-level "oracle",
// "alpha_rho", "bv", "c1", "n_sim" unless they override them; "horizon" is
// copied into every policy. Throws ConfigError.
ExperimentConfig ParseExperimentConfig(
    std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

std::string ToJson(const ExperimentConfig& config, int indent = 2);

// r(S*; mu), exact by enumeration when the action space has at most
// kEnumerationLimit actions, otherwise the value of `fallback`'s action on
// the true means with its (alpha, beta) recorded.
struct BaselineValue {
  double value = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
  bool exact = true;
  Action action;
  std::string method;
};

// Throws OracleError if the space is not enumerable and `fallback` is null.
BaselineValue OptimalValue(const Environment& env, const OracleSpec* fallback,
                           std::uint64_t seed = 0);

// (alpha, beta)-approximate regret of one repetition against
// alpha * beta * r(S*; mu), where alpha and beta are those of the policy's
// oracle. Instantaneous regret uses r(S_t; mu), not the realized reward.
struct RegretCurve {
  std::vector<double> instantaneous;
  std::vector<double> cumulative;
  double baseline = 0.0;         // alpha * beta * r(S*; mu)
  double realized_reward = 0.0;  // sum of R(S_t, X_t, tau_t)
};

RegretCurve RunRepetition(const Environment& env, const PolicyConfig& config,
                          const BaselineValue& optimum, std::int64_t horizon,
                          std::uint64_t seed);

struct RegretSummary {
  std::vector<double> mean;  // pointwise mean cumulative regret
  std::vector<double> std;   // pointwise sample std (n - 1), 0 for n = 1
  double final_mean = 0.0;
  double final_std = 0.0;
};

// Throws std::invalid_argument on empty input or unequal lengths.
RegretSummary Aggregate(std::span<const RegretCurve> curves);

struct PolicyOutcome {
  PolicyConfig config;
  BaselineValue optimum;
  std::vector<std::uint64_t> seeds;
  std::vector<RegretCurve> curves;
  RegretSummary summary;
  double wall_seconds = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::uint64_t instance_seed = 0;
  std::string instance_json;
  std::vector<PolicyOutcome> policies;
};

// Runs every policy for config.repetitions independent repetitions. Each
// repetition gets DeriveSeed(seed, rep) for outcomes; the instance is drawn
// once from DeriveSeed(seed, "instance"). Repetitions run on up to `threads`
// workers (0 = hardware concurrency); results do not depend on it.
ExperimentResult RunExperiment(const ExperimentConfig& config, int threads = 0);

// Header round,mean_cum_regret,std_cum_regret,rep_0,...; rounds from 1.
void EmitCsv(const RegretSummary& summary, std::span<const RegretCurve> curves,
             const std::filesystem::path& path);

// Deterministic run metadata of one policy (no timing).
std::string MetadataJson(const ExperimentResult& result,
                         std::size_t policy_index);

// Writes <name>_<policy>.csv and .json per policy plus <name>.timing.json.
// Returns the written paths.
std::vector<std::filesystem::path> WriteOutputs(
    const ExperimentResult& result, const std::filesystem::path& dir);

// Sublinearity signature: after the first `burn_in` fraction of the
// horizon, increments of the curve over consecutive `window`-round blocks
// never increase.
bool IsCoarselyConcave(std::span<const double> cumulative,
                       std::int64_t window = 1000, double burn_in = 0.1);

}  // namespace cmabt

#endif  // CMABT_EXPERIMENT_H_
