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

#include "sensikit/generators.h"

#include <algorithm>
#include <cmath>

#include "sensikit/error.h"
#include "sensikit/text_io.h"

namespace sensikit {

ExponentialRecords::ExponentialRecords(double rate) : rate_(rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::kDomain, "exponential records: rate must be > 0");
  }
}

Record ExponentialRecords::Draw(Rng& rng) const {
  return {SampleExponential(rng, rate_)};
}

std::string ExponentialRecords::description() const {
  return "exp:" + FormatDouble(rate_);
}

UniformCubeRecords::UniformCubeRecords(int dims) : dims_(dims) {
  if (dims < 1) throw Error(ErrorCode::kDomain, "uniform records: d must be >= 1");
}

Record UniformCubeRecords::Draw(Rng& rng) const {
  Record r(dims_);
  for (double& v : r) v = rng.Uniform();
  return r;
}

std::string UniformCubeRecords::description() const {
  return "uniform:" + std::to_string(dims_);
}

TwoGaussiansRecords::TwoGaussiansRecords(int dims) : dims_(dims) {
  if (dims < 1) throw Error(ErrorCode::kDomain, "twogauss records: d must be >= 1");
}

Record TwoGaussiansRecords::Draw(Rng& rng) const {
  const bool positive = rng.Uniform() < 0.5;
  const double mean = positive ? 0.2 : 0.8;
  Record r(dims_ + 1);
  for (int j = 0; j < dims_; ++j) {
    r[j] = std::clamp(mean + 0.1 * SampleStandardNormal(rng), 0.0, 1.0);
  }
  r[dims_] = positive ? 1.0 : -1.0;
  return r;
}

std::string TwoGaussiansRecords::description() const {
  return "twogauss:" + std::to_string(dims_);
}

Record GaussianMixtureRecords::Draw(Rng& rng) const {
  const bool first = rng.Uniform() < 0.4;
  const double z = SampleStandardNormal(rng);
  const double v = first ? 0.5 + std::sqrt(0.02) * z : 0.75 + std::sqrt(0.005) * z;
  return {std::clamp(v, 0.0, 1.0)};
}

std::string GaussianMixtureRecords::description() const { return "mixture"; }

std::unique_ptr<RecordSampler> MakeRecordSampler(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto int_arg = [&]() {
    const double v = ParseDouble(arg);
    if (v != std::floor(v) || v < 1 || v > 1e6) {
      throw Error(ErrorCode::kParse, "distribution '" + spec + "': bad dimension");
    }
    return static_cast<int>(v);
  };
  if (kind == "exp" && !arg.empty()) {
    return std::make_unique<ExponentialRecords>(ParseDouble(arg));
  }
  if (kind == "uniform" && !arg.empty()) {
    return std::make_unique<UniformCubeRecords>(int_arg());
  }
  if (kind == "twogauss" && !arg.empty()) {
    return std::make_unique<TwoGaussiansRecords>(int_arg());
  }
  if (kind == "mixture" && arg.empty()) {
    return std::make_unique<GaussianMixtureRecords>();
  }
  throw Error(ErrorCode::kParse,
              "unknown distribution '" + spec +
                  "' (expected exp:<rate>, uniform:<d>, twogauss:<d> or mixture)");
}

}  // namespace sensikit
