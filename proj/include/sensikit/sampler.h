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

#ifndef SENSIKIT_SAMPLER_H_
#define SENSIKIT_SAMPLER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sensikit/target.h"

namespace sensikit {

// Sorted sensitivity measurements G_(1) <= ... <= G_(m) plus provenance.
struct SensitivitySample {
  std::vector<double> values;
  std::int64_t n = 0;
  OutputNorm norm = OutputNorm::kL1;
  std::uint64_t master_seed = 0;
  std::string target_label;

  std::int64_t m() const { return static_cast<std::int64_t>(values.size()); }
};

struct SamplerOptions {
  int threads = 1;  // < 1 selects hardware concurrency
};

// Draws n+1 records from `sampler` on stream `stream` of `seed` and returns
// ||f(r_1..r_n) - f(r_1..r_{n-1}, r_{n+1})|| under the target's norm.
// Throws Error(kTargetEvaluation) on non-finite outputs.
double MeasureSensitivity(const TargetFunction& target,
                          const RecordSampler& sampler, std::uint64_t seed,
                          std::uint64_t stream);

// Measures m independent sensitivities (iteration i uses stream i of
// master_seed) and sorts them. The result depends only on the arguments,
// not on options.threads.
SensitivitySample SampleSensitivity(const TargetFunction& target,
                                    const RecordSampler& sampler,
                                    std::int64_t m, std::uint64_t master_seed,
                                    const SamplerOptions& options = {});

// k-th smallest measurement, 1-based; k = m gives the maximum.
double EstimateDelta(const SensitivitySample& sample, std::int64_t k);

// Fraction of measurements <= g.
double EmpiricalCdf(const SensitivitySample& sample, double g);

// Fraction of `trials` fresh neighbouring pairs whose sensitivity is at most
// delta_hat.
double VerifyRdpCoverage(const TargetFunction& target,
                         const RecordSampler& sampler, double delta_hat,
                         std::int64_t trials, std::uint64_t seed,
                         const SamplerOptions& options = {});

// Text form: a header line
//   sensikit-sample v1, n=<n>, m=<m>, norm=<id>, seed=<u64>, target=<label>
// followed by one shortest round-trip decimal per line, ascending.
std::string SerializeSample(const SensitivitySample& sample);
SensitivitySample ParseSample(const std::string& text);

void WriteSampleFile(const SensitivitySample& sample, const std::string& path);
SensitivitySample ReadSampleFile(const std::string& path);

}  // namespace sensikit

#endif  // SENSIKIT_SAMPLER_H_
