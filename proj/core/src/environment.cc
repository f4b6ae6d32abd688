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

#include "cmabt/environment.h"

#include <stdexcept>

#include "cmabt/errors.h"

namespace cmabt {

double Environment::TriggeringProb(const Action& action,
                                   std::span<const double> means,
                                   int arm) const {
  if (arm < 0 || arm >= NumArms()) {
    throw std::out_of_range("arm index out of range");
  }
  return TriggeringProbs(action, means)[arm];
}

std::vector<double> Environment::EstimateTriggeringProbs(
    const Action& action, std::span<const double> means, int /*n_sim*/,
    Rng& /*rng*/) const {
  return TriggeringProbs(action, means);
}

Action Environment::CoverUnobserved(
    std::span<const std::int64_t> counts) const {
  auto actions = EnumerateActions(kEnumerationLimit);
  if (!actions) {
    throw OracleError(std::string(Kind()) +
                      ": action space too large for the covering sweep");
  }
  if (actions->empty()) throw OracleError("empty action space");
  std::size_t best = 0;
  int best_gain = -1;
  for (std::size_t a = 0; a < actions->size(); ++a) {
    int gain = 0;
    for (int arm : ActionArms((*actions)[a])) gain += counts[arm] == 0;
    if (gain > best_gain) {
      best_gain = gain;
      best = a;
    }
  }
  return (*actions)[best];
}

}  // namespace cmabt
