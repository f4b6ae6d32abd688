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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed below.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cmabt/arm_stats.h"
#include "cmabt/cascade.h"
#include "cmabt/dag_im.h"
#include "cmabt/experiment.h"
#include "cmabt/instance_io.h"
#include "cmabt/oracles.h"
#include "cmabt/pmc.h"
#include "cmabt/rng.h"
#include "cmabt/smoothness.h"
#include "json.hpp"
#include "reference.h"

namespace cmabt {
namespace {

constexpr double kCascadeRatioMax = 0.90;
constexpr double kPmcRatioMax = 0.92;
constexpr std::int64_t kSmoothnessTrials = 100000;
constexpr double kC1Target = 10.78;
constexpr double kC1Tolerance = 0.05;
constexpr int kOracleInstances = 100;
constexpr int kMcGreedySims = 10000;
constexpr double kMcGreedyMatchRate = 0.95;
constexpr int kWelfordSteps = 10000;
constexpr double kWelfordTolerance = 1e-9;
constexpr int kSigmaInstances = 20;
constexpr int kSigmaSims = 10000;
constexpr double kSigmaZ = 3.0;

const std::filesystem::path kConfigDir = CMABT_CONFIG_DIR;

int failures = 0;

void Report(bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const PolicyOutcome& Find(const ExperimentResult& r, PolicyKind kind) {
  for (const auto& p : r.policies) {
    if (p.config.kind == kind) return p;
  }
  throw std::runtime_error("policy missing from result");
}

// Consecutive window-block pairs (after burn-in) whose increment grows.
int IncreasingBlocks(const std::vector<double>& c, std::int64_t window = 1000,
                     double burn_in = 0.1) {
  const auto n = static_cast<std::int64_t>(c.size());
  const auto start = static_cast<std::int64_t>(std::ceil(burn_in * n));
  auto at = [&](std::int64_t k) { return k == 0 ? 0.0 : c[k - 1]; };
  int count = 0;
  double previous = INFINITY;
  for (std::int64_t lo = start; lo + window <= n; lo += window) {
    const double inc = at(lo + window) - at(lo);
    count += inc > previous;
    previous = inc;
  }
  return count;
}

void CascadingReproduction() {
  const auto config = LoadExperimentConfig(kConfigDir / "cascading_f1.json");
  const auto result = RunExperiment(config);
  const auto& cucb = Find(result, PolicyKind::kCucb);
  const auto& bcucb = Find(result, PolicyKind::kBcucbT);
  const double ratio = bcucb.summary.final_mean / cucb.summary.final_mean;
  const bool concave_c = IsCoarselyConcave(cucb.summary.mean);
  const bool concave_b = IsCoarselyConcave(bcucb.summary.mean);
  Report(ratio <= kCascadeRatioMax && concave_c && concave_b, "cascading_f1",
         Fmt("CUCB %.1f+-%.1f, BCUCB-T %.1f+-%.1f, ratio %.4f (<= %.2f); "
             "concave CUCB=%d (%d increasing blocks), BCUCB-T=%d (%d)",
             cucb.summary.final_mean, cucb.summary.final_std,
             bcucb.summary.final_mean, bcucb.summary.final_std, ratio,
             kCascadeRatioMax, concave_c, IncreasingBlocks(cucb.summary.mean),
             concave_b, IncreasingBlocks(bcucb.summary.mean)));
}

void PmcReproductionAndDeterminism() {
  const auto config = LoadExperimentConfig(kConfigDir / "pmc_f2.json");
  const auto first = RunExperiment(config, 1);
  const auto& escb = Find(first, PolicyKind::kEscb);
  const auto& bcucb = Find(first, PolicyKind::kBcucbT);
  const auto& sescb = Find(first, PolicyKind::kSescbSubmodular);
  const double ratio = sescb.summary.final_mean / bcucb.summary.final_mean;
  Report(ratio <= kPmcRatioMax && escb.summary.final_mean > sescb.summary.final_mean,
         "pmc_f2",
         Fmt("ESCB %.1f+-%.1f, BCUCB-T %.1f+-%.1f, SESCB %.1f+-%.1f; "
             "SESCB/BCUCB-T %.4f (<= %.2f), ESCB > SESCB %d",
             escb.summary.final_mean, escb.summary.final_std,
             bcucb.summary.final_mean, bcucb.summary.final_std,
             sescb.summary.final_mean, sescb.summary.final_std, ratio,
             kPmcRatioMax, escb.summary.final_mean > sescb.summary.final_mean));

  // Second run with a different worker count; CSVs must match byte for byte.
  const std::filesystem::path out = "acceptance_out";
  std::filesystem::remove_all(out);
  const auto a = WriteOutputs(first, out / "a");
  const auto b = WriteOutputs(RunExperiment(config, 3), out / "b");
  int compared = 0;
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i) {
    if (a[i].extension() != ".csv") continue;
    same = a[i].filename() == b[i].filename() && ReadFile(a[i]) == ReadFile(b[i]);
    ++compared;
  }
  Report(same && compared == 3, "determinism",
         Fmt("%d CSVs of pmc_f2 byte-identical across two runs: %d", compared,
             same));
}

void SmoothnessSuite() {
  std::string detail;
  bool pass = true;
  for (const char* name : {"check_disjunctive", "check_conjunctive",
                           "check_pmc", "check_mulane"}) {
    const auto j = nlohmann::json::parse(
        ReadFile(kConfigDir / (std::string(name) + ".json")));
    const auto seed = j.at("seed").get<std::uint64_t>();
    const auto env = BuildEnvironment(j.at("environment").dump(),
                                      DeriveSeed(seed, "instance"));
    const auto entry = CoefficientTable(
        ParseApplication(j.at("application").get<std::string>()),
        SizesOf(*env), j.value("pmc_proof_value", false));
    Rng rng(DeriveSeed(seed, "trials"));
    const auto r =
        RunCheck(*env, entry.condition, entry.coeffs, kSmoothnessTrials, rng);
    const bool ok = r.violation_count == 0 && !r.monte_carlo_triggering &&
                    r.trials == kSmoothnessTrials;
    pass = pass && ok;
    detail += Fmt("%s%s %s(%.4g,%.4g,%.4g) violations=%lld max_ratio=%.4f",
                  detail.empty() ? "" : "; ", name,
                  std::string(ToString(entry.condition)).c_str(),
                  entry.coeffs.bv, entry.coeffs.b1, entry.coeffs.lambda,
                  static_cast<long long>(r.violation_count), r.max_ratio);
  }
  Report(pass, "smoothness", detail);
}

void C1Golden() {
  const double c1 = BernoulliSubgaussianC1(0.01, 0.99);
  Report(std::abs(c1 - kC1Target) <= kC1Tolerance, "c1_golden",
         Fmt("C1(0.01, 0.99) = %.4f, target %.2f +- %.2f", c1, kC1Target,
             kC1Tolerance));
}

// Greedy on the exact spread of an independent live-edge enumeration;
// lowest node wins ties.
std::vector<int> ExactGreedy(int nodes, int k,
                             const std::vector<std::tuple<int, int, double>>& e) {
  std::vector<int> chosen;
  for (int step = 0; step < k; ++step) {
    int best = -1;
    double best_value = -1.0;
    for (int v = 0; v < nodes; ++v) {
      if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
      auto trial = chosen;
      trial.push_back(v);
      const double value = reference::LiveEdgeEnumeration(nodes, e, trial).sigma;
      if (value > best_value) {
        best_value = value;
        best = v;
      }
    }
    chosen.push_back(best);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

void OracleEquivalence() {
  Rng rng(DeriveSeed(2026, "oracle_equivalence"));

  int cascade_ok = 0;
  for (int i = 0; i < kOracleInstances; ++i) {
    const int m = 2 + static_cast<int>(rng.UniformIndex(7));  // 2..8
    const int k = 1 + static_cast<int>(rng.UniformIndex(std::min(m, 4)));
    std::vector<double> means(m);
    for (double& x : means) x = rng.Uniform();
    const auto mode = i % 2 ? CascadeMode::kConjunctive : CascadeMode::kDisjunctive;
    CascadeEnvironment env({means, k, mode});
    const auto actions = *env.EnumerateActions(1 << 20);
    const auto best = std::get<RankedList>(EnumerateOracle(
        actions, [&](const Action& a) { return env.ExpectedReward(a, means); }));
    const auto top = TopKOracle(means, k);
    auto s1 = best.arms, s2 = top.arms;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    const double v1 = env.ExpectedReward(best, means);
    const double v2 = env.ExpectedReward(top, means);
    cascade_ok += s1 == s2 && std::abs(v1 - v2) <= 1e-12;
  }

  int pmc_ok = 0;
  const double ratio = 1.0 - 1.0 / std::exp(1.0);
  for (int i = 0; i < kOracleInstances; ++i) {
    const int l = 3 + static_cast<int>(rng.UniformIndex(6));  // 3..8
    const int v = 2 + static_cast<int>(rng.UniformIndex(5));  // 2..6
    const int k = 1 + static_cast<int>(rng.UniformIndex(3));
    PmcInstance inst{l, v, {}, k};
    for (int e = 0; e < l * v; ++e) inst.edge_means.push_back(rng.Uniform());
    PmcEnvironment env(inst);
    const auto& mu = env.TrueMeans();
    const double opt = env.ExpectedReward(
        SolveForArmValues(env, OracleSpec::Enumeration(), mu, 0), mu);
    const double greedy = env.ExpectedReward(
        SolveForArmValues(env, OracleSpec::GreedySubmodular(), mu, 0), mu);
    pmc_ok += greedy >= ratio * opt - 1e-12;
  }

  int im_match = 0;
  for (int i = 0; i < kOracleInstances; ++i) {
    const int nodes = 3 + static_cast<int>(rng.UniformIndex(4));  // 3..6
    const int k = 1 + static_cast<int>(rng.UniformIndex(2));
    std::vector<DagEdge> edges;
    std::vector<std::tuple<int, int, double>> triples;
    std::vector<double> probs;
    for (int u = 0; u < nodes; ++u) {
      for (int w = u + 1; w < nodes; ++w) {
        if (rng.Bernoulli(0.5)) {
          const double p = rng.Uniform();
          edges.push_back({u, w, p});
          triples.emplace_back(u, w, p);
          probs.push_back(p);
        }
      }
    }
    DagImInstance dag(nodes, edges, k);
    const auto exact = ExactGreedy(nodes, k, triples);
    const auto mc = McGreedyIm(dag, k, probs, kMcGreedySims,
                               DeriveSeed(2026, static_cast<std::uint64_t>(i)));
    const bool match =
        mc == exact ||
        std::abs(reference::LiveEdgeEnumeration(nodes, triples, mc).sigma -
                 reference::LiveEdgeEnumeration(nodes, triples, exact).sigma) <=
            1e-9;
    im_match += match;
  }
  const double rate = static_cast<double>(im_match) / kOracleInstances;
  Report(cascade_ok == kOracleInstances && pmc_ok == kOracleInstances &&
             rate >= kMcGreedyMatchRate,
         "oracle_equivalence",
         Fmt("top_k = enumeration %d/%d; greedy >= (1-1/e) opt %d/%d; "
             "mc_greedy_im = exact greedy %d/%d (>= %.0f%%)",
             cascade_ok, kOracleInstances, pmc_ok, kOracleInstances, im_match,
             kOracleInstances, 100 * kMcGreedyMatchRate));
}

void StatisticsOracle() {
  Rng rng(DeriveSeed(2026, "statistics"));
  ArmStats stats;
  std::vector<double> xs;
  double worst = 0.0;
  for (int i = 0; i < kWelfordSteps; ++i) {
    const double x = i % 3 == 0 ? static_cast<double>(rng.Bernoulli(0.3))
                                : rng.Uniform();
    xs.push_back(x);
    stats = UpdateStats(stats, x);
    if (i % 10 == 9 || i + 1 == kWelfordSteps) {
      const auto [mean, var] = reference::BatchMeanVariance(xs);
      worst = std::max({worst, std::abs(stats.mean - mean),
                        std::abs(stats.variance - var)});
    }
  }

  int within = 0;
  double worst_z = 0.0;
  for (int i = 0; i < kSigmaInstances; ++i) {
    const int nodes = 3 + i % 4;
    const int max_edges = 1 + i % 5;
    std::vector<DagEdge> edges;
    std::vector<std::tuple<int, int, double>> triples;
    std::vector<double> probs;
    for (int u = 0; u < nodes && static_cast<int>(edges.size()) < max_edges; ++u) {
      for (int w = u + 1; w < nodes && static_cast<int>(edges.size()) < max_edges;
           ++w) {
        const double p = rng.Uniform(0.05, 0.95);
        edges.push_back({u, w, p});
        triples.emplace_back(u, w, p);
        probs.push_back(p);
      }
    }
    DagImInstance dag(nodes, edges, 1);
    const std::vector<int> seeds{0};
    const auto exact = reference::LiveEdgeEnumeration(nodes, triples, seeds);
    Rng mc_rng(DeriveSeed(2026, static_cast<std::uint64_t>(100 + i)));
    const double estimate = OimSigmaMc(dag, seeds, probs, kSigmaSims, mc_rng);
    const double variance = exact.second_moment - exact.sigma * exact.sigma;
    const double se = std::sqrt(std::max(variance, 0.0) / kSigmaSims);
    const double z = se > 0 ? std::abs(estimate - exact.sigma) / se
                            : (estimate == exact.sigma ? 0.0 : INFINITY);
    worst_z = std::max(worst_z, z);
    within += z <= kSigmaZ;
  }
  Report(worst <= kWelfordTolerance && within == kSigmaInstances, "statistics",
         Fmt("Welford vs batch max error %.3g over %d steps (<= %.0e); "
             "MC sigma within %.0f SE %d/%d (max z %.2f)",
             worst, kWelfordSteps, kWelfordTolerance, kSigmaZ, within,
             kSigmaInstances, worst_z));
}

}  // namespace
}  // namespace cmabt

int main() {
  using namespace cmabt;
  const std::vector<std::pair<const char*, std::function<void()>>> criteria = {
      {"cascading_f1", CascadingReproduction},
      {"pmc_f2", PmcReproductionAndDeterminism},
      {"smoothness", SmoothnessSuite},
      {"c1_golden", C1Golden},
      {"oracle_equivalence", OracleEquivalence},
      {"statistics", StatisticsOracle},
  };
  for (const auto& [name, run] : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      Report(false, name, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
