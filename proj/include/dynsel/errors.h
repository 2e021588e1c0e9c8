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

#ifndef DYNSEL_ERRORS_H_
#define DYNSEL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dynsel {

// Malformed arguments: ids out of range, weights outside [0,1], bad scales.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold (e.g. the
// fractional point is outside the polytope the scheme was promised).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Asking for something the object cannot answer (e.g. the selection
// probability of an element that was never accepted).
class QueryError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An internal invariant failed at run time. Always a bug or a numerically
// broken input; callers should stop the experiment.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid experiment configuration or unreadable input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dynsel

#endif  // DYNSEL_ERRORS_H_
