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

#ifndef SENSIKIT_TARGETS_H_
#define SENSIKIT_TARGETS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensikit/target.h"

namespace sensikit {

// Coordinatewise sample mean of n records in R^d, L1 norm. When the records
// are known to live in [0,1]^d the sharp global sensitivity d/n is exposed.
class MeanTarget : public TargetFunction {
 public:
  MeanTarget(int dims, int n, bool unit_cube_domain = false);

  int arity() const override { return n_; }
  OutputNorm norm() const override { return OutputNorm::kL1; }
  std::string label() const override;
  std::vector<double> Evaluate(std::span<const Record> records) const override;
  std::optional<double> GlobalSensitivity() const override;

 private:
  int dims_;
  int n_;
  bool unit_cube_domain_;
};

struct KdeConfig {
  double bandwidth = 0.05;
  int lattice_size = 10;  // k; the lattice is {0, 1/k, ..., 1}
};

// Gaussian kernel centred at `center`, truncated to [0, 1] and renormalized
// to integrate to one there.
double TruncatedKernel(double y, double center, double bandwidth);

// Density estimate (1/n) sum_i K(y; x_i) for scalar records in [0, 1].
double KdeDensity(std::span<const Record> records, double bandwidth, double y);

// Largest change of the lattice values when one of n records moves within
// [0, 1]: (1/n) sup K = 1 / (n bw sqrt(2 pi) (Phi(1/bw) - 1/2)).
double KdeGlobalSensitivity(const KdeConfig& config, int n);

// Lattice-valued density estimate: output j is the KDE at j/k. Norm is the
// sup over lattice points.
class KdeTarget : public TargetFunction {
 public:
  KdeTarget(const KdeConfig& config, int n);

  int arity() const override { return n_; }
  OutputNorm norm() const override { return OutputNorm::kLatticeSup; }
  std::string label() const override;
  std::vector<double> Evaluate(std::span<const Record> records) const override;
  std::optional<double> GlobalSensitivity() const override;

  const KdeConfig& config() const { return config_; }

 private:
  KdeConfig config_;
  int n_;
};

}  // namespace sensikit

#endif  // SENSIKIT_TARGETS_H_
