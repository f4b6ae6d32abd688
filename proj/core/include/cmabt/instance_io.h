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

#ifndef CMABT_INSTANCE_IO_H_
#define CMABT_INSTANCE_IO_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "cmabt/environment.h"
#include "cmabt/rng.h"

namespace cmabt {

// Scalar distribution used to synthesize instance parameters:
// "uniform(lo, hi)" or "constant(c)".
struct Distribution {
  double lo = 0.0;
  double hi = 0.0;

  static Distribution Parse(std::string_view text);  // throws ConfigError
  double Sample(Rng& rng) const;
  std::string ToString() const;
};

// Builds an environment from its JSON description (see README for the
// schema). Synthesized parameters are drawn from `instance_seed`; an
// "instance_file" key is resolved relative to `base_dir`. Throws
// ConfigError on malformed input.
std::unique_ptr<Environment> BuildEnvironment(
    std::string_view spec_json, std::uint64_t instance_seed,
    const std::filesystem::path& base_dir = {});

// Concrete instance (all parameters resolved) as JSON accepted by
// BuildEnvironment.
std::string InstanceToJson(const Environment& env, int indent = -1);

}  // namespace cmabt

#endif  // CMABT_INSTANCE_IO_H_
