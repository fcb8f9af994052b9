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

#include "sensikit/error.h"

namespace sensikit {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain:
      return "domain";
    case ErrorCode::kInfeasiblePlan:
      return "infeasible-plan";
    case ErrorCode::kDegenerateSensitivity:
      return "degenerate-sensitivity";
    case ErrorCode::kNumeric:
      return "numeric";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kTargetEvaluation:
      return "target-evaluation";
    case ErrorCode::kIndex:
      return "index";
    case ErrorCode::kDimensionMismatch:
      return "dimension-mismatch";
    case ErrorCode::kParse:
      return "parse";
  }
  return "unknown";
}

}  // namespace sensikit
