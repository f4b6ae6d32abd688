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

// Command-line front end: run experiments, check smoothness, print
// coefficient rows.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime or oracle error.

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cmabt/errors.h"
#include "cmabt/experiment.h"
#include "cmabt/instance_io.h"
#include "cmabt/smoothness.h"
#include "json.hpp"

namespace {

using nlohmann::json;

int RunCommand(const std::string& path, std::optional<std::uint64_t> seed,
               std::optional<std::string> out,
               std::optional<int> reps, std::optional<std::int64_t> horizon,
               int threads) {
  auto config = cmabt::LoadExperimentConfig(path);
  if (seed) config.seed = *seed;
  if (reps) {
    if (*reps < 1) throw cmabt::ConfigError("--reps must be >= 1");
    config.repetitions = *reps;
  }
  if (horizon) {
    if (*horizon < 1) throw cmabt::ConfigError("--horizon must be >= 1");
    config.horizon = *horizon;
    for (auto& p : config.policies) p.horizon = *horizon;
  }
  if (out) config.output_dir = *out;

  const auto result = cmabt::RunExperiment(config, threads);
  const auto written = cmabt::WriteOutputs(result, config.output_dir);
  for (const auto& p : result.policies) {
    std::cout << cmabt::ToString(p.config.kind)
              << ": final cumulative regret " << p.summary.final_mean
              << " +/- " << p.summary.final_std << " over "
              << config.repetitions << " repetitions (" << p.wall_seconds
              << " s)\n";
  }
  for (const auto& file : written) std::cout << "wrote " << file.string() << "\n";
  return 0;
}

json ReadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cmabt::ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw cmabt::ConfigError(path + ": " + e.what());
  }
}

int CheckCommand(const std::string& path, std::optional<std::uint64_t> seed,
                 std::optional<std::int64_t> trials) {
  const json j = ReadJson(path);
  if (!j.contains("environment")) {
    throw cmabt::ConfigError("check config needs an 'environment' block");
  }
  const std::uint64_t master = seed.value_or(j.value("seed", std::uint64_t{0}));
  const auto env = cmabt::BuildEnvironment(
      j.at("environment").dump(), cmabt::DeriveSeed(master, "instance"),
      std::filesystem::path(path).parent_path());

  cmabt::Condition condition;
  cmabt::Coefficients coeffs;
  if (j.contains("application")) {
    const auto entry = cmabt::CoefficientTable(
        cmabt::ParseApplication(j.at("application").get<std::string>()),
        cmabt::SizesOf(*env), j.value("pmc_proof_value", false));
    condition = entry.condition;
    coeffs = entry.coeffs;
  } else {
    condition = cmabt::ParseCondition(j.value("condition", std::string()));
  }
  if (j.contains("condition")) {
    condition = cmabt::ParseCondition(j.at("condition").get<std::string>());
  }
  coeffs.bv = j.value("bv", coeffs.bv);
  coeffs.b1 = j.value("b1", coeffs.b1);
  coeffs.lambda = j.value("lambda", coeffs.lambda);

  cmabt::CheckOptions options;
  options.tolerance = j.value("tolerance", options.tolerance);
  options.n_sim = j.value("n_sim", options.n_sim);
  const std::int64_t n = trials.value_or(j.value("trials", std::int64_t{10000}));
  if (n < 1) throw cmabt::ConfigError("trials must be >= 1");

  cmabt::Rng rng(cmabt::DeriveSeed(master, "trials"));
  const auto report = cmabt::RunCheck(*env, condition, coeffs, n, rng, options);
  std::cout << cmabt::ToJson(report) << "\n";
  return 0;
}

int TableCommand(const std::string& application, int targets, int longest_path,
                 bool pmc_proof_value) {
  const auto entry = cmabt::CoefficientTable(
      cmabt::ParseApplication(application), {targets, longest_path},
      pmc_proof_value);
  nlohmann::ordered_json j;
  j["application"] = cmabt::ToString(entry.application);
  j["condition"] = cmabt::ToString(entry.condition);
  j["bv"] = entry.coeffs.bv;
  j["b1"] = entry.coeffs.b1;
  if (entry.has_lambda) {
    j["lambda"] = entry.coeffs.lambda;
  } else {
    j["lambda"] = nullptr;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial bandits with probabilistically triggered arms"};
  app.set_version_flag("--version", std::string(cmabt::LibraryVersion()));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> reps;
  std::optional<std::int64_t> horizon;
  std::optional<std::int64_t> trials;
  int threads = 0;

  auto* run = app.add_subcommand("run", "Run a regret experiment");
  run->add_option("config", config_path, "Experiment config (JSON)")
      ->required();
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--out", out, "Override the output directory");
  run->add_option("--reps", reps, "Override the number of repetitions");
  run->add_option("--horizon", horizon, "Override the horizon T");
  run->add_option("--threads", threads,
                  "Worker threads (0 = hardware concurrency)");

  auto* check = app.add_subcommand("check", "Check a smoothness condition");
  check->add_option("config", config_path, "Check config (JSON)")->required();
  check->add_option("--seed", seed, "Override the master seed");
  check->add_option("--trials", trials, "Override the number of trials");

  std::string application;
  int targets = 0;
  int longest_path = 0;
  bool pmc_proof_value = false;
  auto* table = app.add_subcommand("table", "Print a coefficient-table row");
  table->add_option("application", application,
                    "disjunctive | conjunctive | mulane | oim_dag | pmc")
      ->required();
  table->add_option("--V", targets, "Number of targets |V|");
  table->add_option("--L", longest_path, "Longest path length (oim_dag)");
  table->add_flag("--pmc-proof-value", pmc_proof_value,
                  "Use B_v = 3 sqrt(|V|/2) for pmc");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*run) return RunCommand(config_path, seed, out, reps, horizon, threads);
    if (*check) return CheckCommand(config_path, seed, trials);
    if (*table) {
      return TableCommand(application, targets, longest_path, pmc_proof_value);
    }
  } catch (const cmabt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
