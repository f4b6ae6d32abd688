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

#include "cmabt/arm_stats.h"

#include <algorithm>
#include <cmath>

namespace cmabt {

ArmStats UpdateStats(const ArmStats& stats, double x) {
  ArmStats next;
  next.count = stats.count + 1;
  const double n_old = static_cast<double>(stats.count);
  const double n_new = static_cast<double>(next.count);
  next.mean = stats.mean + (x - stats.mean) / n_new;
  const double dev = stats.mean - x;
  next.variance = (n_old / n_new) * (stats.variance + dev * dev / n_new);
  return next;
}

double EmpiricalBernsteinRadius(const ArmStats& stats, double t,
                                double alpha_rho) {
  if (stats.count == 0) return kInfiniteRadius;
  const double n = static_cast<double>(stats.count);
  const double log_t = std::log(t);
  return alpha_rho *
         (std::sqrt(6.0 * stats.variance * log_t / n) + 9.0 * log_t / n);
}

double ClippedUcb(double mean, double radius) {
  return std::min(mean + radius, 1.0);
}

double UcbValue(const ArmStats& stats, double t, double alpha_rho) {
  return ClippedUcb(stats.mean, EmpiricalBernsteinRadius(stats, t, alpha_rho));
}

}  // namespace cmabt
