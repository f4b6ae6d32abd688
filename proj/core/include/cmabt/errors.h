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

#ifndef CMABT_ERRORS_H_
#define CMABT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cmabt {

// Malformed or inconsistent configuration / instance data.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An oracle could not produce a feasible action, or a policy cannot run on
// the environment it was handed.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A confidence radius that needs every arm observed at least once was
// evaluated on an arm with a zero counter.
class UninitializedArmError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cmabt

#endif  // CMABT_ERRORS_H_
