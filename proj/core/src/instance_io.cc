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

#include "cmabt/instance_io.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cmabt/cascade.h"
#include "cmabt/dag_im.h"
#include "cmabt/errors.h"
#include "cmabt/mulane.h"
#include "cmabt/pmc.h"
#include "json.hpp"

namespace cmabt {

using nlohmann::json;

Distribution Distribution::Parse(std::string_view text) {
  static const std::regex kUniform(
      R"(\s*uniform\s*\(\s*([^,\s]+)\s*,\s*([^,\s\)]+)\s*\)\s*)");
  static const std::regex kConstant(R"(\s*constant\s*\(\s*([^\s\)]+)\s*\)\s*)");
  const std::string s(text);
  std::smatch match;
  auto number = [&](const std::string& token) {
    try {
      std::size_t used = 0;
      const double x = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return x;
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + token + "' in distribution '" + s +
                        "'");
    }
  };
  Distribution d;
  if (std::regex_match(s, match, kUniform)) {
    d.lo = number(match[1]);
    d.hi = number(match[2]);
  } else if (std::regex_match(s, match, kConstant)) {
    d.lo = d.hi = number(match[1]);
  } else {
    throw ConfigError("unrecognized distribution '" + s +
                      "' (expected uniform(a, b) or constant(c))");
  }
  if (!(d.lo <= d.hi)) throw ConfigError("distribution bounds out of order");
  return d;
}

double Distribution::Sample(Rng& rng) const {
  return lo == hi ? lo : rng.Uniform(lo, hi);
}

std::string Distribution::ToString() const {
  std::ostringstream out;
  out.precision(17);
  if (lo == hi) {
    out << "constant(" << lo << ")";
  } else {
    out << "uniform(" << lo << ", " << hi << ")";
  }
  return out.str();
}

namespace {

template <typename T>
T Get(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw ConfigError(std::string("environment: missing key '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("environment: key '") + key +
                      "' has the wrong type");
  }
}

// A list of n values: an explicit array or a distribution string.
std::vector<double> Values(const json& j, const char* key, std::size_t n,
                           Rng& rng) {
  if (!j.contains(key)) {
    throw ConfigError(std::string("environment: missing key '") + key + "'");
  }
  const json& v = j.at(key);
  std::vector<double> out;
  if (v.is_string()) {
    const auto dist = Distribution::Parse(v.get<std::string>());
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(dist.Sample(rng));
    return out;
  }
  if (!v.is_array()) {
    throw ConfigError(std::string("environment: '") + key +
                      "' must be an array or a distribution");
  }
  // Nested arrays are flattened row-major.
  std::function<void(const json&)> flatten = [&](const json& node) {
    if (node.is_array()) {
      for (const auto& child : node) flatten(child);
    } else if (node.is_number()) {
      out.push_back(node.get<double>());
    } else {
      throw ConfigError(std::string("environment: '") + key +
                        "' must contain numbers");
    }
  };
  flatten(v);
  if (out.size() != n) {
    throw ConfigError(std::string("environment: '") + key + "' needs " +
                      std::to_string(n) + " values, got " +
                      std::to_string(out.size()));
  }
  return out;
}

std::unique_ptr<Environment> BuildCascade(const json& j, Rng& rng) {
  CascadeInstance inst;
  const auto mode = Get<std::string>(j, "mode");
  if (mode == "disjunctive") {
    inst.mode = CascadeMode::kDisjunctive;
  } else if (mode == "conjunctive") {
    inst.mode = CascadeMode::kConjunctive;
  } else {
    throw ConfigError("cascading: mode must be disjunctive or conjunctive");
  }
  inst.list_length = Get<int>(j, "K");
  std::size_t m = 0;
  if (j.contains("means") && j.at("means").is_array()) {
    m = j.at("means").size();
  } else {
    const int mi = Get<int>(j, "m");
    if (mi < 1) throw ConfigError("cascading: m must be positive");
    m = static_cast<std::size_t>(mi);
  }
  inst.means = Values(j, "means", m, rng);
  return std::make_unique<CascadeEnvironment>(std::move(inst));
}

std::unique_ptr<Environment> BuildPmc(const json& j, Rng& rng) {
  PmcInstance inst;
  inst.num_sources = Get<int>(j, "L");
  inst.num_targets = Get<int>(j, "V");
  inst.seeds = Get<int>(j, "k");
  if (inst.num_sources < 1 || inst.num_targets < 1) {
    throw ConfigError("pmc: L and V must be positive");
  }
  inst.edge_means = Values(
      j, "edge_means",
      static_cast<std::size_t>(inst.num_sources) * inst.num_targets, rng);
  return std::make_unique<PmcEnvironment>(std::move(inst));
}

std::unique_ptr<Environment> BuildMulane(const json& j, Rng& rng) {
  MulaneInstance inst;
  inst.layers = Get<int>(j, "n");
  inst.targets = Get<int>(j, "V");
  inst.budget = Get<int>(j, "B");
  if (inst.layers < 1 || inst.targets < 1 || inst.budget < 0) {
    throw ConfigError("mulane: n and V must be positive, B non-negative");
  }
  const std::size_t cells =
      static_cast<std::size_t>(inst.layers) * inst.targets;
  const int levels = inst.budget + 1;
  if (!j.contains("visit_prob")) throw ConfigError("mulane: missing visit_prob");
  const json& visit = j.at("visit_prob");
  if (visit.is_object()) {
    // x(b) = 1 - (1 - r)^b with one per-step probability r per (layer, target).
    const auto dist = Distribution::Parse(Get<std::string>(visit, "per_step"));
    inst.visit_prob.reserve(cells * levels);
    for (std::size_t c = 0; c < cells; ++c) {
      const double r = dist.Sample(rng);
      for (int b = 0; b < levels; ++b) {
        inst.visit_prob.push_back(1.0 - std::pow(1.0 - r, b));
      }
    }
  } else {
    inst.visit_prob = Values(j, "visit_prob", cells * levels, rng);
  }
  inst.weight_means = Values(j, "weight_means", inst.targets, rng);
  return std::make_unique<MulaneEnvironment>(std::move(inst));
}

std::unique_ptr<Environment> BuildOimDag(const json& j, Rng& rng) {
  const int nodes = Get<int>(j, "nodes");
  const int k = Get<int>(j, "k");
  if (nodes < 1) throw ConfigError("oim_dag: nodes must be positive");
  std::vector<DagEdge> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) {
        throw ConfigError("oim_dag: edges are [source, target, prob] triples");
      }
      try {
        edges.push_back(
            {e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
      } catch (const json::exception&) {
        throw ConfigError("oim_dag: malformed edge");
      }
    }
  } else if (j.contains("random_dag")) {
    // Edge u -> v for u < v with probability edge_density, then edge means.
    const double density = Get<double>(j.at("random_dag"), "edge_density");
    if (!(density >= 0.0 && density <= 1.0)) {
      throw ConfigError("oim_dag: edge_density must lie in [0, 1]");
    }
    for (int u = 0; u < nodes; ++u) {
      for (int v = u + 1; v < nodes; ++v) {
        if (rng.Bernoulli(density)) edges.push_back({u, v, 0.0});
      }
    }
    const auto means = Values(j, "edge_means", edges.size(), rng);
    for (std::size_t e = 0; e < edges.size(); ++e) edges[e].prob = means[e];
  } else {
    throw ConfigError("oim_dag: need 'edges' or 'random_dag'");
  }
  return std::make_unique<DagImEnvironment>(
      DagImInstance(nodes, std::move(edges), k));
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::unique_ptr<Environment> BuildEnvironment(
    std::string_view spec_json, std::uint64_t instance_seed,
    const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(spec_json);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("environment: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("environment must be a JSON object");
  if (j.contains("instance_file")) {
    j = ReadJsonFile(base_dir / Get<std::string>(j, "instance_file"));
    if (!j.is_object()) throw ConfigError("instance file must hold an object");
  }
  Rng rng(instance_seed);
  const auto type = Get<std::string>(j, "type");
  if (type == "cascading") return BuildCascade(j, rng);
  if (type == "pmc") return BuildPmc(j, rng);
  if (type == "mulane") return BuildMulane(j, rng);
  if (type == "oim_dag") return BuildOimDag(j, rng);
  throw ConfigError("unknown environment type '" + type + "'");
}

std::string InstanceToJson(const Environment& env, int indent) {
  nlohmann::ordered_json j;
  if (const auto* c = dynamic_cast<const CascadeEnvironment*>(&env)) {
    j["type"] = "cascading";
    j["mode"] = ToString(c->mode());
    j["K"] = c->instance().list_length;
    j["means"] = c->instance().means;
  } else if (const auto* p = dynamic_cast<const PmcEnvironment*>(&env)) {
    const auto& inst = p->instance();
    j["type"] = "pmc";
    j["L"] = inst.num_sources;
    j["V"] = inst.num_targets;
    j["k"] = inst.seeds;
    auto rows = nlohmann::ordered_json::array();
    for (int u = 0; u < inst.num_sources; ++u) {
      rows.push_back(std::vector<double>(
          inst.edge_means.begin() + inst.ArmIndex(u, 0),
          inst.edge_means.begin() + inst.ArmIndex(u, 0) + inst.num_targets));
    }
    j["edge_means"] = rows;
  } else if (const auto* m = dynamic_cast<const MulaneEnvironment*>(&env)) {
    const auto& inst = m->instance();
    j["type"] = "mulane";
    j["n"] = inst.layers;
    j["V"] = inst.targets;
    j["B"] = inst.budget;
    auto layers = nlohmann::ordered_json::array();
    for (int i = 0; i < inst.layers; ++i) {
      auto targets = nlohmann::ordered_json::array();
      for (int u = 0; u < inst.targets; ++u) {
        const auto first = inst.visit_prob.begin() + inst.VisitArm(i, u, 0);
        targets.push_back(std::vector<double>(first, first + inst.budget + 1));
      }
      layers.push_back(targets);
    }
    j["visit_prob"] = layers;
    j["weight_means"] = inst.weight_means;
  } else if (const auto* d = dynamic_cast<const DagImEnvironment*>(&env)) {
    const auto& dag = d->dag();
    j["type"] = "oim_dag";
    j["nodes"] = dag.num_nodes();
    j["k"] = dag.seeds();
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : dag.edges()) {
      edges.push_back({e.source, e.target, e.prob});
    }
    j["edges"] = edges;
  } else {
    throw std::invalid_argument("InstanceToJson: unknown environment");
  }
  return j.dump(indent);
}

}  // namespace cmabt
