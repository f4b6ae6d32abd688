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

#include "cmabt/types.h"

#include <sstream>

namespace cmabt {

const std::vector<int>& Payload(const Action& action) {
  return std::visit(
      [](const auto& a) -> const std::vector<int>& {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, RankedList>) {
          return a.arms;
        } else if constexpr (std::is_same_v<T, SeedSet>) {
          return a.nodes;
        } else {
          return a.budgets;
        }
      },
      action);
}

std::string ToString(const Action& action) {
  std::ostringstream out;
  const char open = std::holds_alternative<RankedList>(action)  ? '['
                    : std::holds_alternative<SeedSet>(action)   ? '{'
                                                                : '(';
  const char close = open == '[' ? ']' : open == '{' ? '}' : ')';
  out << open;
  const auto& items = Payload(action);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ',';
    out << items[i];
  }
  out << close;
  return out.str();
}

}  // namespace cmabt
