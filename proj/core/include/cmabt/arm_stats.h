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

#ifndef CMABT_ARM_STATS_H_
#define CMABT_ARM_STATS_H_

#include <cstdint>
#include <limits>

namespace cmabt {

inline constexpr double kInfiniteRadius =
    std::numeric_limits<double>::infinity();

// Sufficient statistics of one base arm: observation count, empirical mean
// and population (divide-by-n) empirical variance.
struct ArmStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;

  friend bool operator==(const ArmStats&, const ArmStats&) = default;
};

// Incremental mean/variance update with one outcome x in [0, 1].
//   mean'     = mean + (x - mean) / n'
//   variance' = (n / n') * (variance + (mean - x)^2 / n')
ArmStats UpdateStats(const ArmStats& stats, double x);

// Empirical-Bernstein confidence radius
//   alpha_rho * (sqrt(6 V ln t / n) + 9 ln t / n),
// with natural logs. Returns kInfiniteRadius for an unobserved arm. `t` is
// the current round (t >= 1); it is real-valued so callers may pass any
// positive time.
double EmpiricalBernsteinRadius(const ArmStats& stats, double t,
                                double alpha_rho = 1.0);

// min(mean + radius, 1). An infinite radius yields exactly 1.
double ClippedUcb(double mean, double radius);

// Variance-aware UCB index of one arm; 1 for an unobserved arm.
double UcbValue(const ArmStats& stats, double t, double alpha_rho = 1.0);

}  // namespace cmabt

#endif  // CMABT_ARM_STATS_H_
