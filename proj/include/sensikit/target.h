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

#ifndef SENSIKIT_TARGET_H_
#define SENSIKIT_TARGET_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensikit/rng.h"

namespace sensikit {

// A database record: numeric features, with any label stored last.
using Record = std::vector<double>;

enum class OutputNorm { kL1, kL2, kLinf, kLatticeSup };

const char* OutputNormName(OutputNorm norm);
std::optional<OutputNorm> ParseOutputNorm(const std::string& name);

// Distance between two target outputs under the given norm. LATTICE_SUP is
// the sup over lattice points, numerically the same as LINF.
double NormDistance(OutputNorm norm, std::span<const double> a,
                    std::span<const double> b);

// Non-private function of a database of `arity()` records. Evaluate must be
// deterministic and safe to call concurrently.
class TargetFunction {
 public:
  virtual ~TargetFunction() = default;

  virtual int arity() const = 0;
  virtual OutputNorm norm() const = 0;
  virtual std::string label() const = 0;
  virtual std::vector<double> Evaluate(
      std::span<const Record> records) const = 0;

  // Analytic global sensitivity, when the target knows one.
  virtual std::optional<double> GlobalSensitivity() const {
    return std::nullopt;
  }
};

// Distribution P over records. Draw must be safe to call concurrently with
// distinct generators.
class RecordSampler {
 public:
  virtual ~RecordSampler() = default;

  virtual Record Draw(Rng& rng) const = 0;
  virtual std::string description() const = 0;
};

}  // namespace sensikit

#endif  // SENSIKIT_TARGET_H_
