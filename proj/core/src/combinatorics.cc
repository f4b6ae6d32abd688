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

#include "cmabt/combinatorics.h"

#include <cmath>
#include <numeric>

namespace cmabt {

double LogBinomial(int n, int k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::optional<std::vector<std::vector<int>>> Subsets(int n, int k,
                                                     std::size_t limit) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  if (LogBinomial(n, k) > std::log(static_cast<double>(limit)) + 1e-9) {
    return std::nullopt;
  }
  std::vector<int> current(k);
  std::iota(current.begin(), current.end(), 0);
  while (true) {
    out.push_back(current);
    int i = k - 1;
    while (i >= 0 && current[i] == n - k + i) --i;
    if (i < 0) break;
    ++current[i];
    for (int j = i + 1; j < k; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

namespace {

void Arrange(int n, int k, std::vector<int>& prefix, std::vector<char>& used,
             std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == k) {
    out.push_back(prefix);
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = 1;
    prefix.push_back(i);
    Arrange(n, k, prefix, used, out);
    prefix.pop_back();
    used[i] = 0;
  }
}

void Compose(int remaining, int parts, std::vector<int>& prefix,
             std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int b = 0; b <= remaining; ++b) {
    prefix.push_back(b);
    Compose(remaining - b, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::optional<std::vector<std::vector<int>>> Arrangements(int n, int k,
                                                          std::size_t limit) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  const double log_count = std::lgamma(n + 1.0) - std::lgamma(n - k + 1.0);
  if (log_count > std::log(static_cast<double>(limit)) + 1e-9) {
    return std::nullopt;
  }
  std::vector<int> prefix;
  std::vector<char> used(n, 0);
  Arrange(n, k, prefix, used, out);
  return out;
}

std::optional<std::vector<std::vector<int>>> Compositions(int total, int parts,
                                                          std::size_t limit) {
  std::vector<std::vector<int>> out;
  if (parts <= 0 || total < 0) return out;
  if (LogBinomial(total + parts - 1, parts - 1) >
      std::log(static_cast<double>(limit)) + 1e-9) {
    return std::nullopt;
  }
  std::vector<int> prefix;
  Compose(total, parts, prefix, out);
  return out;
}

}  // namespace cmabt
