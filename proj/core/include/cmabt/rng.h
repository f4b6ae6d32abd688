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

#ifndef CMABT_RNG_H_
#define CMABT_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace cmabt {

// Thin wrapper over mt19937_64. The engine's output sequence is fixed by the
// standard, and the conversions below are ours, so draws are bit-identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Uniform integer in [0, n). Requires n > 0.
  std::uint64_t UniformIndex(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);

// Child seed for stream `index` of `master`.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index);

// Child seed for a named stream of `master` (e.g. "instance").
std::uint64_t DeriveSeed(std::uint64_t master, std::string_view tag);

}  // namespace cmabt

#endif  // CMABT_RNG_H_
