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

#include "sensikit/target.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sensikit/error.h"

namespace sensikit {

const char* OutputNormName(OutputNorm norm) {
  switch (norm) {
    case OutputNorm::kL1:
      return "l1";
    case OutputNorm::kL2:
      return "l2";
    case OutputNorm::kLinf:
      return "linf";
    case OutputNorm::kLatticeSup:
      return "lattice_sup";
  }
  return "l1";
}

std::optional<OutputNorm> ParseOutputNorm(const std::string& name) {
  if (name == "l1") return OutputNorm::kL1;
  if (name == "l2") return OutputNorm::kL2;
  if (name == "linf") return OutputNorm::kLinf;
  if (name == "lattice_sup") return OutputNorm::kLatticeSup;
  return std::nullopt;
}

double NormDistance(OutputNorm norm, std::span<const double> a,
                    std::span<const double> b) {
  if (a.size() != b.size()) {
    std::ostringstream msg;
    msg << "output dimension changed between evaluations (" << a.size()
        << " vs " << b.size() << ")";
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  double result = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = std::abs(a[i] - b[i]);
    switch (norm) {
      case OutputNorm::kL1:
        result += diff;
        break;
      case OutputNorm::kL2:
        result += diff * diff;
        break;
      case OutputNorm::kLinf:
      case OutputNorm::kLatticeSup:
        result = std::max(result, diff);
        break;
    }
  }
  return norm == OutputNorm::kL2 ? std::sqrt(result) : result;
}

}  // namespace sensikit
