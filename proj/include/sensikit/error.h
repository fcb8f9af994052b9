// Copyright 2026 The Sensikit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SENSIKIT_ERROR_H_
#define SENSIKIT_ERROR_H_

#include <stdexcept>
#include <string>

namespace sensikit {

// Error families. The numeric values double as CLI exit codes.
enum class ErrorCode {
  kDomain = 3,
  kInfeasiblePlan = 4,
  kDegenerateSensitivity = 5,
  kNumeric = 6,
  kIo = 7,
  kTargetEvaluation = 8,
  kIndex = 9,
  kDimensionMismatch = 10,
  kParse = 11,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised when the requested confidence cannot be reached with the given
// sample size. Carries the smallest gamma that would be feasible.
class InfeasiblePlanError : public Error {
 public:
  InfeasiblePlanError(const std::string& message, double min_feasible_gamma)
      : Error(ErrorCode::kInfeasiblePlan, message),
        min_feasible_gamma_(min_feasible_gamma) {}

  double min_feasible_gamma() const { return min_feasible_gamma_; }

 private:
  double min_feasible_gamma_;
};

}  // namespace sensikit

#endif  // SENSIKIT_ERROR_H_
