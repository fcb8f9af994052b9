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

#include "sensikit/targets.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sensikit/error.h"
#include "sensikit/text_io.h"

namespace sensikit {
namespace {

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double NormalPdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

void CheckArity(std::span<const Record> records, int n, const char* who) {
  if (static_cast<int>(records.size()) != n) {
    std::ostringstream msg;
    msg << who << ": expected " << n << " records, got " << records.size();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
}

}  // namespace

MeanTarget::MeanTarget(int dims, int n, bool unit_cube_domain)
    : dims_(dims), n_(n), unit_cube_domain_(unit_cube_domain) {
  if (dims < 1 || n < 1) {
    throw Error(ErrorCode::kDomain, "MeanTarget: dims and n must be >= 1");
  }
}

std::string MeanTarget::label() const {
  return "mean(d=" + std::to_string(dims_) + ")";
}

std::vector<double> MeanTarget::Evaluate(std::span<const Record> records) const {
  CheckArity(records, n_, "MeanTarget");
  std::vector<double> sum(dims_, 0.0);
  for (const Record& r : records) {
    if (static_cast<int>(r.size()) != dims_) {
      std::ostringstream msg;
      msg << "MeanTarget: record has " << r.size() << " values, expected "
          << dims_;
      throw Error(ErrorCode::kDimensionMismatch, msg.str());
    }
    for (int j = 0; j < dims_; ++j) sum[j] += r[j];
  }
  for (double& s : sum) s /= n_;
  return sum;
}

std::optional<double> MeanTarget::GlobalSensitivity() const {
  if (!unit_cube_domain_) return std::nullopt;
  return static_cast<double>(dims_) / n_;
}

double TruncatedKernel(double y, double center, double bandwidth) {
  const double mass = NormalCdf((1.0 - center) / bandwidth) -
                      NormalCdf(-center / bandwidth);
  return NormalPdf((y - center) / bandwidth) / (bandwidth * mass);
}

double KdeDensity(std::span<const Record> records, double bandwidth, double y) {
  double total = 0.0;
  for (const Record& r : records) {
    if (r.size() != 1 || !(r[0] >= 0.0 && r[0] <= 1.0)) {
      throw Error(ErrorCode::kDomain,
                  "KDE: records must be single values in [0, 1]");
    }
    total += TruncatedKernel(y, r[0], bandwidth);
  }
  return total / static_cast<double>(records.size());
}

double KdeGlobalSensitivity(const KdeConfig& config, int n) {
  const double bw = config.bandwidth;
  return 1.0 / (n * bw * std::sqrt(2.0 * std::numbers::pi) *
                (NormalCdf(1.0 / bw) - 0.5));
}

KdeTarget::KdeTarget(const KdeConfig& config, int n) : config_(config), n_(n) {
  if (!(config.bandwidth > 0.0) || config.lattice_size < 1 || n < 1) {
    throw Error(ErrorCode::kDomain,
                "KdeTarget: need bandwidth > 0, lattice size >= 1, n >= 1");
  }
}

std::string KdeTarget::label() const {
  return "kde(bw=" + FormatDouble(config_.bandwidth) +
         ",k=" + std::to_string(config_.lattice_size) + ")";
}

std::vector<double> KdeTarget::Evaluate(std::span<const Record> records) const {
  CheckArity(records, n_, "KdeTarget");
  const int k = config_.lattice_size;
  const double bw = config_.bandwidth;
  std::vector<double> out(k + 1, 0.0);
  for (const Record& r : records) {
    if (r.size() != 1 || !(r[0] >= 0.0 && r[0] <= 1.0)) {
      throw Error(ErrorCode::kDomain,
                  "KdeTarget: records must be single values in [0, 1]");
    }
    const double x = r[0];
    const double norm =
        bw * (NormalCdf((1.0 - x) / bw) - NormalCdf(-x / bw));
    for (int j = 0; j <= k; ++j) {
      out[j] += NormalPdf((static_cast<double>(j) / k - x) / bw) / norm;
    }
  }
  for (double& v : out) v /= n_;
  return out;
}

std::optional<double> KdeTarget::GlobalSensitivity() const {
  return KdeGlobalSensitivity(config_, n_);
}

}  // namespace sensikit
