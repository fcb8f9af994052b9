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

#ifndef SENSIKIT_GENERATORS_H_
#define SENSIKIT_GENERATORS_H_

#include <memory>
#include <string>

#include "sensikit/target.h"

namespace sensikit {

// Exp(rate) scalar records.
class ExponentialRecords : public RecordSampler {
 public:
  explicit ExponentialRecords(double rate);
  Record Draw(Rng& rng) const override;
  std::string description() const override;

 private:
  double rate_;
};

// Uniform records on [0,1]^d.
class UniformCubeRecords : public RecordSampler {
 public:
  explicit UniformCubeRecords(int dims);
  Record Draw(Rng& rng) const override;
  std::string description() const override;

 private:
  int dims_;
};

// Labelled records: with equal probability the positive class
// N(0.2 * 1, 0.01 I) or the negative class N(0.8 * 1, 0.01 I). Features are
// clipped to [0,1]^d; the label (+1 / -1) is appended.
class TwoGaussiansRecords : public RecordSampler {
 public:
  explicit TwoGaussiansRecords(int dims);
  Record Draw(Rng& rng) const override;
  std::string description() const override;

 private:
  int dims_;
};

// 0.4 N(0.5, 0.02) + 0.6 N(0.75, 0.005) (second parameter is the
// variance), clipped to [0, 1].
class GaussianMixtureRecords : public RecordSampler {
 public:
  Record Draw(Rng& rng) const override;
  std::string description() const override;
};

// Parses "exp:<rate>", "uniform:<d>", "twogauss:<d>" or "mixture".
std::unique_ptr<RecordSampler> MakeRecordSampler(const std::string& spec);

}  // namespace sensikit

#endif  // SENSIKIT_GENERATORS_H_
