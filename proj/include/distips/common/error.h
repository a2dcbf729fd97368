// Copyright 2026 The distips Authors
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

#ifndef DISTIPS_COMMON_ERROR_H_
#define DISTIPS_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace distips {

// Malformed or missing input: files, arguments, or values violating a
// documented precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A deployment or routing problem with no feasible solution.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant was violated. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace distips

#endif  // DISTIPS_COMMON_ERROR_H_
