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

#include "cmabt/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "cmabt/errors.h"
#include "cmabt/instance_io.h"
#include "json.hpp"

namespace cmabt {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view LibraryVersion() { return CMABT_VERSION; }

namespace {

const std::set<std::string> kTopLevelKeys = {
    "name",  "environment", "policies", "horizon", "repetitions", "seed",
    "output_dir", "oracle", "alpha_rho", "bv", "c1", "n_sim"};
const std::set<std::string> kPolicyKeys = {"name", "oracle", "alpha_rho",
                                           "bv",   "c1",     "n_sim"};

template <typename T>
T Field(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + ": '" + key + "' is missing or has the wrong type");
  }
}

void RejectUnknown(const json& j, const std::set<std::string>& allowed,
                   const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

OracleSpec MakeOracle(const std::string& name, int n_sim) {
  switch (ParseOracleKind(name)) {
    case OracleKind::kEnumeration:
      return OracleSpec::Enumeration();
    case OracleKind::kTopK:
      return OracleSpec::TopK();
    case OracleKind::kGreedySubmodular:
      return OracleSpec::GreedySubmodular();
    case OracleKind::kMcGreedyIm:
      // beta = 1/|V| is filled in once the instance is known.
      return OracleSpec::McGreedyIm(n_sim, 1);
  }
  throw ConfigError("unknown oracle");
}

std::string FormatDouble(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

ordered_json PolicyJson(const PolicyConfig& p) {
  return {{"name", ToString(p.kind)},
          {"alpha_rho", p.alpha_rho},
          {"bv", p.bv},
          {"c1", p.c1},
          {"horizon", p.horizon},
          {"oracle",
           {{"kind", ToString(p.oracle.kind)},
            {"alpha", p.oracle.alpha},
            {"beta", p.oracle.beta},
            {"n_sim", p.oracle.n_sim}}}};
}

}  // namespace

ExperimentConfig ParseExperimentConfig(std::string_view json_text,
                                       const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RejectUnknown(j, kTopLevelKeys, "config");

  ExperimentConfig config;
  config.base_dir = base_dir;
  config.name = Field<std::string>(j, "name", "config");
  if (config.name.empty() ||
      config.name.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("config: name must be a non-empty file stem");
  }
  if (!j.contains("environment") || !j.at("environment").is_object()) {
    throw ConfigError("config: 'environment' must be an object");
  }
  config.environment_json = j.at("environment").dump();
  config.horizon = Field<std::int64_t>(j, "horizon", "config");
  if (config.horizon < 1) throw ConfigError("config: horizon must be >= 1");
  config.repetitions = j.contains("repetitions")
                           ? Field<int>(j, "repetitions", "config")
                           : 1;
  if (config.repetitions < 1) {
    throw ConfigError("config: repetitions must be >= 1");
  }
  config.seed = j.contains("seed") ? Field<std::uint64_t>(j, "seed", "config")
                                   : 0;
  if (j.contains("output_dir")) {
    config.output_dir = Field<std::string>(j, "output_dir", "config");
  }

  if (!j.contains("policies") || !j.at("policies").is_array() ||
      j.at("policies").empty()) {
    throw ConfigError("config: 'policies' must be a non-empty array");
  }
  std::set<std::string> seen;
  for (const auto& entry : j.at("policies")) {
    json p = entry.is_string() ? json{{"name", entry}} : entry;
    if (!p.is_object()) {
      throw ConfigError("config: a policy is a name or an object");
    }
    RejectUnknown(p, kPolicyKeys, "policy");
    // Top-level defaults, overridden per policy.
    for (const char* key : {"oracle", "alpha_rho", "bv", "c1", "n_sim"}) {
      if (!p.contains(key) && j.contains(key)) p[key] = j.at(key);
    }
    const auto name = Field<std::string>(p, "name", "policy");
    if (!seen.insert(name).second) {
      throw ConfigError("config: policy '" + name + "' listed twice");
    }
    PolicyConfig pc;
    pc.kind = ParsePolicyKind(name);
    pc.alpha_rho =
        p.contains("alpha_rho") ? Field<double>(p, "alpha_rho", name) : 1.0;
    pc.bv = p.contains("bv") ? Field<double>(p, "bv", name) : 1.0;
    pc.c1 = p.contains("c1") ? Field<double>(p, "c1", name) : 1.0;
    pc.horizon = config.horizon;
    const int n_sim = p.contains("n_sim") ? Field<int>(p, "n_sim", name) : 1000;
    if (n_sim < 1) throw ConfigError(name + ": n_sim must be >= 1");
    pc.oracle = MakeOracle(
        p.contains("oracle") ? Field<std::string>(p, "oracle", name)
                             : std::string("enumeration"),
        n_sim);
    config.policies.push_back(pc);
  }
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return ParseExperimentConfig(text, path.parent_path());
}

std::string ToJson(const ExperimentConfig& config, int indent) {
  ordered_json j;
  j["name"] = config.name;
  j["environment"] = ordered_json::parse(config.environment_json);
  j["horizon"] = config.horizon;
  j["repetitions"] = config.repetitions;
  j["seed"] = config.seed;
  j["output_dir"] = config.output_dir;
  auto policies = ordered_json::array();
  for (const auto& p : config.policies) policies.push_back(PolicyJson(p));
  j["policies"] = policies;
  return j.dump(indent);
}

BaselineValue OptimalValue(const Environment& env, const OracleSpec* fallback,
                           std::uint64_t seed) {
  const auto& means = env.TrueMeans();
  BaselineValue result;
  if (auto actions = env.EnumerateActions(kEnumerationLimit)) {
    result.action = EnumerateOracle(*actions, [&](const Action& a) {
      return env.ExpectedReward(a, means);
    });
    result.value = env.ExpectedReward(result.action, means);
    result.method = "enumeration";
    return result;
  }
  if (fallback == nullptr) {
    throw OracleError(std::string(env.Kind()) +
                      ": no baseline method for a non-enumerable action space");
  }
  result.action = SolveForArmValues(env, *fallback, means, seed);
  result.value = env.ExpectedReward(result.action, means);
  result.alpha = fallback->alpha;
  result.beta = fallback->beta;
  result.exact = fallback->alpha * fallback->beta == 1.0 &&
                 fallback->kind != OracleKind::kMcGreedyIm;
  result.method = std::string("oracle:") + std::string(ToString(fallback->kind));
  return result;
}

RegretCurve RunRepetition(const Environment& env, const PolicyConfig& config,
                          const BaselineValue& optimum, std::int64_t horizon,
                          std::uint64_t seed) {
  auto policy = MakePolicy(env, config, DeriveSeed(seed, "oracle"));
  Rng env_rng(seed);
  RegretCurve curve;
  curve.baseline = config.oracle.alpha * config.oracle.beta * optimum.value;
  curve.instantaneous.reserve(horizon);
  curve.cumulative.reserve(horizon);
  std::map<Action, double> expected;
  double total = 0.0;
  for (std::int64_t t = 0; t < horizon; ++t) {
    const StepResult step = policy->Step(env_rng);
    auto it = expected.find(step.action);
    if (it == expected.end()) {
      it = expected
               .emplace(step.action,
                        env.ExpectedReward(step.action, env.TrueMeans()))
               .first;
    }
    const double regret = curve.baseline - it->second;
    total += regret;
    curve.instantaneous.push_back(regret);
    curve.cumulative.push_back(total);
    curve.realized_reward += step.feedback.reward;
  }
  return curve;
}

RegretSummary Aggregate(std::span<const RegretCurve> curves) {
  if (curves.empty()) throw std::invalid_argument("aggregate: no curves");
  const std::size_t length = curves[0].cumulative.size();
  for (const auto& c : curves) {
    if (c.cumulative.size() != length) {
      throw std::invalid_argument("aggregate: curve lengths differ");
    }
  }
  const double n = static_cast<double>(curves.size());
  RegretSummary summary;
  summary.mean.assign(length, 0.0);
  summary.std.assign(length, 0.0);
  for (std::size_t t = 0; t < length; ++t) {
    double sum = 0.0;
    for (const auto& c : curves) sum += c.cumulative[t];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& c : curves) {
      const double d = c.cumulative[t] - mean;
      ss += d * d;
    }
    summary.mean[t] = mean;
    summary.std[t] = curves.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  if (length > 0) {
    summary.final_mean = summary.mean.back();
    summary.final_std = summary.std.back();
  }
  return summary;
}

ExperimentResult RunExperiment(const ExperimentConfig& config, int threads) {
  ExperimentResult result;
  result.config = config;
  result.instance_seed = DeriveSeed(config.seed, "instance");
  const auto env = BuildEnvironment(config.environment_json,
                                    result.instance_seed, config.base_dir);
  result.instance_json = InstanceToJson(*env);

  std::vector<std::uint64_t> seeds(config.repetitions);
  for (int r = 0; r < config.repetitions; ++r) {
    seeds[r] = DeriveSeed(config.seed, static_cast<std::uint64_t>(r));
  }
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = std::clamp(threads > 0 ? threads : static_cast<int>(hw),
                                 1, config.repetitions);

  for (PolicyConfig policy : config.policies) {
    policy.horizon = config.horizon;
    if (policy.oracle.kind == OracleKind::kMcGreedyIm) {
      policy.oracle = OracleSpec::McGreedyIm(policy.oracle.n_sim,
                                             env->GroundSize());
    }
    // Construct once up front so configuration errors surface before the
    // worker threads start.
    MakePolicy(*env, policy, 0);

    PolicyOutcome outcome;
    outcome.config = policy;
    outcome.optimum = OptimalValue(*env, &policy.oracle,
                                   DeriveSeed(config.seed, "baseline"));
    outcome.seeds = seeds;
    outcome.curves.resize(config.repetitions);

    const auto start = std::chrono::steady_clock::now();
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
      for (int r = next++; r < config.repetitions; r = next++) {
        try {
          outcome.curves[r] = RunRepetition(*env, policy, outcome.optimum,
                                            config.horizon, seeds[r]);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = config.repetitions;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    outcome.wall_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    outcome.summary = Aggregate(outcome.curves);
    result.policies.push_back(std::move(outcome));
  }
  return result;
}

void EmitCsv(const RegretSummary& summary, std::span<const RegretCurve> curves,
             const std::filesystem::path& path) {
  std::string text = "round,mean_cum_regret,std_cum_regret";
  for (std::size_t r = 0; r < curves.size(); ++r) {
    text += ",rep_" + std::to_string(r);
  }
  text += '\n';
  for (std::size_t t = 0; t < summary.mean.size(); ++t) {
    text += std::to_string(t + 1);
    text += ',' + FormatDouble(summary.mean[t]);
    text += ',' + FormatDouble(summary.std[t]);
    for (const auto& c : curves) text += ',' + FormatDouble(c.cumulative[t]);
    text += '\n';
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string MetadataJson(const ExperimentResult& result,
                         std::size_t policy_index) {
  const auto& outcome = result.policies.at(policy_index);
  const auto& p = outcome.config;
  ordered_json j;
  j["experiment"] = result.config.name;
  j["library_version"] = LibraryVersion();
  j["policy"] = PolicyJson(p);
  j["horizon"] = result.config.horizon;
  j["repetitions"] = result.config.repetitions;
  j["master_seed"] = result.config.seed;
  j["instance_seed"] = result.instance_seed;
  j["repetition_seeds"] = outcome.seeds;
  j["environment"] = ordered_json::parse(result.config.environment_json);
  j["instance"] = ordered_json::parse(result.instance_json);
  j["baseline"] = {{"value", outcome.optimum.value},
                   {"alpha", outcome.optimum.alpha},
                   {"beta", outcome.optimum.beta},
                   {"exact", outcome.optimum.exact},
                   {"method", outcome.optimum.method},
                   {"action", ToString(outcome.optimum.action)},
                   {"regret_baseline", p.oracle.alpha * p.oracle.beta *
                                           outcome.optimum.value}};
  j["regret"] = {
      {"definition",
       "alpha*beta*r(S*;mu) - r(S_t;mu) per round, alpha and beta of the "
       "policy's oracle"},
      {"final_mean", outcome.summary.final_mean},
      {"final_std", outcome.summary.final_std}};
  auto realized = ordered_json::array();
  for (const auto& c : outcome.curves) realized.push_back(c.realized_reward);
  j["realized_reward"] = realized;
  ordered_json notes;
  switch (p.kind) {
    case PolicyKind::kCucb:
      notes["radius"] = "alpha_rho*sqrt(3 ln t/(2 T_i)); UCB 1 for unobserved";
      break;
    case PolicyKind::kBcucbT:
      notes["radius"] =
          "alpha_rho*(sqrt(6 V_i ln t/T_i) + 9 ln t/T_i); UCB 1 for unobserved";
      break;
    case PolicyKind::kEscb:
      notes["index_bonus"] = "alpha_rho*sqrt((ln t/2) * sum_{i in S} 1/T_i)";
      break;
    case PolicyKind::kSescb:
      notes["index_bonus"] =
          "alpha_rho*B_v*sqrt(sum C1/T_i + max{8 C1 sqrt(sum L/T_i^2), "
          "8 C1 L/T_min}), L = ln(2|S|T)";
      break;
    case PolicyKind::kSescbSubmodular:
      notes["index_bonus"] =
          "alpha_rho*B_v*sqrt(sum C1/T_i + 8 C1 sqrt(sum L/T_i^2) + "
          "8 C1 L/T_min), L = ln(2|S|T)";
      break;
  }
  if (p.kind == PolicyKind::kEscb || p.kind == PolicyKind::kSescb ||
      p.kind == PolicyKind::kSescbSubmodular) {
    notes["initialization"] =
        "covering sweep: play the feasible action covering the most "
        "unobserved arms (lowest action on ties) until every arm has been "
        "observed; sweep rounds count toward the horizon";
  }
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> WriteOutputs(
    const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  ordered_json timing;
  timing["experiment"] = result.config.name;
  for (std::size_t i = 0; i < result.policies.size(); ++i) {
    const auto& outcome = result.policies[i];
    const std::string stem = result.config.name + "_" +
                             std::string(ToString(outcome.config.kind));
    const auto csv = dir / (stem + ".csv");
    EmitCsv(outcome.summary, outcome.curves, csv);
    written.push_back(csv);
    const auto meta = dir / (stem + ".json");
    std::ofstream out(meta, std::ios::binary | std::ios::trunc);
    out << MetadataJson(result, i);
    if (!out) throw std::runtime_error("cannot write " + meta.string());
    written.push_back(meta);
    timing["wall_seconds"][std::string(ToString(outcome.config.kind))] =
        outcome.wall_seconds;
  }
  const auto timing_path = dir / (result.config.name + ".timing.json");
  std::ofstream out(timing_path, std::ios::binary | std::ios::trunc);
  out << timing.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write " + timing_path.string());
  written.push_back(timing_path);
  return written;
}

bool IsCoarselyConcave(std::span<const double> cumulative, std::int64_t window,
                       double burn_in) {
  if (window < 1) throw std::invalid_argument("concavity: window < 1");
  const auto n = static_cast<std::int64_t>(cumulative.size());
  const auto start = static_cast<std::int64_t>(std::ceil(burn_in * n));
  // Value before round `start` + 1; block j covers (start + j w, start + (j+1) w].
  auto at = [&](std::int64_t rounds) {
    return rounds == 0 ? 0.0 : cumulative[rounds - 1];
  };
  double previous = std::numeric_limits<double>::infinity();
  for (std::int64_t lo = start; lo + window <= n; lo += window) {
    const double increment = at(lo + window) - at(lo);
    if (increment > previous) return false;
    previous = increment;
  }
  return true;
}

}  // namespace cmabt
