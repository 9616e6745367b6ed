// Copyright 2026 The qtraj Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qtraj {

// Wrong matrix/vector dimension for an operation.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Caller-supplied input rejected before any computation (non-Hermitian
// generator, non-unit axis, bad config field, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical invariant was violated while computing. Carries the name of
// the invariant so the CLI can report it.
class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail),
        invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

// The selected measurement branch has (numerically) zero probability.
class DegenerateOutcomeError : public InvariantViolation {
 public:
  explicit DegenerateOutcomeError(const std::string& detail)
      : InvariantViolation("degenerate-outcome", detail) {}
};

}  // namespace qtraj
