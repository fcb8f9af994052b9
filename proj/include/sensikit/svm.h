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

#ifndef SENSIKIT_SVM_H_
#define SENSIKIT_SVM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sensikit/target.h"

namespace sensikit {

// Linear soft-margin SVM minimising
//   (1/2) ||w||^2 + (C/n) sum_i max(0, 1 - y_i (w . x_i + b)).
// Records are (x_1, ..., x_d, y) with y in {-1, +1}.
struct SvmConfig {
  double C = 3.0;
  int d = 2;
  double tolerance = 1e-8;  // stop when the maximal KKT violation is below
  int max_passes = 10000;   // iteration cap is max_passes * n
};

struct SvmModel {
  std::vector<double> w;
  double b = 0.0;
  bool converged = false;
  std::int64_t iterations = 0;
  double kkt_violation = 0.0;
};

// Deterministic dual solver. Each step updates the pair of multipliers that
// most violates the KKT conditions (ties go to the lowest index), which keeps
// sum_i alpha_i y_i = 0 and 0 <= alpha_i <= C/n. The bias is the mean of
// y_i - w . x_i over free support vectors; without free ones, the midpoint
// of the feasible KKT interval; with a single class and no support vectors,
// that class label.
//
// Throws Error(kDomain) for malformed records or non-finite features. Failing
// to converge is reported in the model, not thrown.
SvmModel SvmTrain(std::span<const Record> records, const SvmConfig& config);

double SvmPrimalObjective(std::span<const Record> records, double C,
                          std::span<const double> w, double b);

// Fraction of records whose label disagrees with sign(w . x + b).
double SvmMisclassification(std::span<const Record> records,
                            std::span<const double> w, double b);

// L1 global sensitivity bound of the released (w, b) over [0,1]^d:
// 2 + 2 C sqrt(d) + 4 C d / n.
double SvmGlobalSensitivity(double C, int d, int n);

// Trains on n records and releases (w_1, ..., w_d, b) under the L1 norm.
class SvmTarget : public TargetFunction {
 public:
  SvmTarget(const SvmConfig& config, int n);

  int arity() const override { return n_; }
  OutputNorm norm() const override { return OutputNorm::kL1; }
  std::string label() const override;
  std::vector<double> Evaluate(std::span<const Record> records) const override;
  std::optional<double> GlobalSensitivity() const override;

 private:
  SvmConfig config_;
  int n_;
};

}  // namespace sensikit

#endif  // SENSIKIT_SVM_H_
