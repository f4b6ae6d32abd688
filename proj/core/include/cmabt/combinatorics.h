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

#ifndef CMABT_COMBINATORICS_H_
#define CMABT_COMBINATORICS_H_

#include <cstddef>
#include <optional>
#include <vector>

namespace cmabt {

// ln C(n, k) via lgamma.
double LogBinomial(int n, int k);

// All k-subsets of {0..n-1} in lexicographic order, or nullopt if there are
// more than `limit`.
std::optional<std::vector<std::vector<int>>> Subsets(int n, int k,
                                                     std::size_t limit);

// All ordered k-tuples of distinct elements of {0..n-1}, lexicographic.
std::optional<std::vector<std::vector<int>>> Arrangements(int n, int k,
                                                          std::size_t limit);

// All vectors of `parts` non-negative integers summing to `total`,
// lexicographic.
std::optional<std::vector<std::vector<int>>> Compositions(int total, int parts,
                                                          std::size_t limit);

}  // namespace cmabt

#endif  // CMABT_COMBINATORICS_H_
