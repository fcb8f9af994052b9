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

#include "sensikit/sampler.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "sensikit/error.h"
#include "sensikit/parallel.h"
#include "sensikit/text_io.h"

namespace sensikit {
namespace {

constexpr char kSampleMagic[] = "sensikit-sample v1";

std::vector<double> EvaluateChecked(const TargetFunction& target,
                                    std::span<const Record> records,
                                    std::uint64_t stream) {
  std::vector<double> out;
  try {
    out = target.Evaluate(records);
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "target '" << target.label() << "' failed at iteration " << stream
        << ": " << e.what();
    throw Error(ErrorCode::kTargetEvaluation, msg.str());
  }
  for (double v : out) {
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "target '" << target.label()
          << "' produced a non-finite output at iteration " << stream;
      throw Error(ErrorCode::kTargetEvaluation, msg.str());
    }
  }
  return out;
}

}  // namespace

double MeasureSensitivity(const TargetFunction& target,
                          const RecordSampler& sampler, std::uint64_t seed,
                          std::uint64_t stream) {
  const int n = target.arity();
  Rng rng(seed, stream);
  std::vector<Record> records;
  records.reserve(n + 1);
  for (int i = 0; i <= n; ++i) records.push_back(sampler.Draw(rng));

  const std::span<const Record> all(records);
  const std::vector<double> first = EvaluateChecked(target, all.first(n), stream);
  // Neighbour: records 1..n-1 followed by record n+1.
  std::swap(records[n - 1], records[n]);
  const std::vector<double> second =
      EvaluateChecked(target, all.first(n), stream);
  const double g = NormDistance(target.norm(), first, second);
  if (!std::isfinite(g)) {
    std::ostringstream msg;
    msg << "non-finite sensitivity at iteration " << stream;
    throw Error(ErrorCode::kTargetEvaluation, msg.str());
  }
  return g;
}

SensitivitySample SampleSensitivity(const TargetFunction& target,
                                    const RecordSampler& sampler,
                                    std::int64_t m, std::uint64_t master_seed,
                                    const SamplerOptions& options) {
  if (m < 1) throw Error(ErrorCode::kDomain, "SampleSensitivity: m must be >= 1");
  if (target.arity() < 1) {
    throw Error(ErrorCode::kDomain, "SampleSensitivity: target arity must be >= 1");
  }
  SensitivitySample sample;
  sample.values.resize(m);
  ParallelFor(m, options.threads, [&](std::int64_t i) {
    sample.values[i] = MeasureSensitivity(target, sampler, master_seed,
                                          static_cast<std::uint64_t>(i));
  });
  std::sort(sample.values.begin(), sample.values.end());
  sample.n = target.arity();
  sample.norm = target.norm();
  sample.master_seed = master_seed;
  sample.target_label = target.label();
  return sample;
}

double EstimateDelta(const SensitivitySample& sample, std::int64_t k) {
  if (k < 1 || k > sample.m()) {
    std::ostringstream msg;
    msg << "EstimateDelta: k = " << k << " outside [1, " << sample.m() << "]";
    throw Error(ErrorCode::kIndex, msg.str());
  }
  return sample.values[k - 1];
}

double EmpiricalCdf(const SensitivitySample& sample, double g) {
  if (sample.values.empty()) return 0.0;
  const auto count = std::upper_bound(sample.values.begin(),
                                      sample.values.end(), g) -
                     sample.values.begin();
  return static_cast<double>(count) / static_cast<double>(sample.m());
}

double VerifyRdpCoverage(const TargetFunction& target,
                         const RecordSampler& sampler, double delta_hat,
                         std::int64_t trials, std::uint64_t seed,
                         const SamplerOptions& options) {
  if (trials < 1) {
    throw Error(ErrorCode::kDomain, "VerifyRdpCoverage: trials must be >= 1");
  }
  std::vector<char> covered(trials);
  ParallelFor(trials, options.threads, [&](std::int64_t i) {
    covered[i] = MeasureSensitivity(target, sampler, seed,
                                    static_cast<std::uint64_t>(i)) <= delta_hat;
  });
  const auto hits = std::count(covered.begin(), covered.end(), 1);
  return static_cast<double>(hits) / static_cast<double>(trials);
}

std::string SerializeSample(const SensitivitySample& sample) {
  std::string out = kSampleMagic;
  out += ", n=" + std::to_string(sample.n);
  out += ", m=" + std::to_string(sample.m());
  out += ", norm=";
  out += OutputNormName(sample.norm);
  out += ", seed=" + std::to_string(sample.master_seed);
  out += ", target=" + sample.target_label + "\n";
  for (double v : sample.values) {
    out += FormatDouble(v);
    out += '\n';
  }
  return out;
}

SensitivitySample ParseSample(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header) || header.rfind(kSampleMagic, 0) != 0) {
    throw Error(ErrorCode::kParse, "sample: missing 'sensikit-sample v1' header");
  }
  SensitivitySample sample;
  std::int64_t m = -1;
  std::string_view rest = std::string_view(header).substr(sizeof(kSampleMagic) - 1);
  // target= is last and may itself contain commas.
  const auto target_pos = rest.find(", target=");
  if (target_pos == std::string_view::npos) {
    throw Error(ErrorCode::kParse, "sample: header lacks target=");
  }
  sample.target_label = std::string(rest.substr(target_pos + 9));
  for (std::string_view field : SplitString(rest.substr(0, target_pos), ',')) {
    field = TrimWhitespace(field);
    if (field.empty()) continue;
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParse, "sample: malformed header field '" +
                                         std::string(field) + "'");
    }
    const std::string key(field.substr(0, eq));
    const std::string value(field.substr(eq + 1));
    try {
      if (key == "n") {
        sample.n = std::stoll(value);
      } else if (key == "m") {
        m = std::stoll(value);
      } else if (key == "norm") {
        const auto norm = ParseOutputNorm(value);
        if (!norm) throw Error(ErrorCode::kParse, "sample: unknown norm " + value);
        sample.norm = *norm;
      } else if (key == "seed") {
        sample.master_seed = std::stoull(value);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParse, "sample: bad value for " + key);
    }
  }
  std::string line;
  while (std::getline(in, line)) {
    if (TrimWhitespace(line).empty()) continue;
    sample.values.push_back(ParseDouble(line));
  }
  if (m != sample.m()) {
    std::ostringstream msg;
    msg << "sample: header declares m=" << m << " but " << sample.m()
        << " values follow";
    throw Error(ErrorCode::kParse, msg.str());
  }
  if (!std::is_sorted(sample.values.begin(), sample.values.end())) {
    throw Error(ErrorCode::kParse, "sample: values are not sorted ascending");
  }
  for (double v : sample.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kParse, "sample: values must be finite and >= 0");
    }
  }
  return sample;
}

void WriteSampleFile(const SensitivitySample& sample, const std::string& path) {
  WriteTextFile(path, SerializeSample(sample));
}

SensitivitySample ReadSampleFile(const std::string& path) {
  return ParseSample(ReadTextFile(path));
}

}  // namespace sensikit
