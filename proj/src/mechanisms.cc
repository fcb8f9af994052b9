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

#include "sensikit/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "sensikit/error.h"

namespace sensikit {
namespace {

using nlohmann::json;

constexpr char kReleaseFormat[] = "sensikit-release v1";
constexpr std::uint64_t kNoiseStreamTag = 0x6e6f697365;  // "noise"

void RequirePositive(double value, const char* name, const char* where) {
  if (!(value > 0.0)) {
    std::ostringstream msg;
    msg << where << ": " << name << " must be > 0, got " << value;
    throw Error(ErrorCode::kDomain, msg.str());
  }
}

// Returns true when the release should go out unnoised.
bool CheckSensitivity(double delta, const MechanismOptions& options,
                      const char* where) {
  if (delta > 0.0 && std::isfinite(delta)) return false;
  if (delta == 0.0) {
    if (options.allow_degenerate) return true;
    std::ostringstream msg;
    msg << where
        << ": sensitivity is 0, so no noise would be added. Increase k or m, "
           "use the maximum statistic (k = m), or pass the allow-degenerate "
           "override to release without privacy";
    throw Error(ErrorCode::kDegenerateSensitivity, msg.str());
  }
  std::ostringstream msg;
  msg << where << ": sensitivity must be finite and >= 0, got " << delta;
  throw Error(ErrorCode::kDomain, msg.str());
}

std::int64_t LatticePoints(int lattice_size, int dims) {
  if (lattice_size < 1 || dims < 1) {
    throw Error(ErrorCode::kDomain,
                "Bernstein: lattice size and dimension must be >= 1");
  }
  double points = std::pow(static_cast<double>(lattice_size + 1), dims);
  if (points > 1e8) {
    throw Error(ErrorCode::kDomain, "Bernstein: lattice too large");
  }
  return static_cast<std::int64_t>(points);
}

double Binomial(int n, int r) {
  double result = 1.0;
  for (int i = 1; i <= r; ++i) {
    result = result * static_cast<double>(n - r + i) / static_cast<double>(i);
  }
  return result;
}

// Applies the 1-D Bernstein matrix B[nu][mu] = b_{mu,k}(nu/k) along every
// axis of the lattice.
std::vector<double> ApplyLatticeBernstein(const std::vector<double>& data,
                                          int k, int dims) {
  const int side = k + 1;
  std::vector<std::vector<double>> matrix(side);
  for (int nu = 0; nu < side; ++nu) {
    matrix[nu] = BernsteinBasis(k, static_cast<double>(nu) / k);
  }
  std::vector<double> current = data;
  std::vector<double> next(data.size());
  std::vector<double> line(side);
  std::int64_t stride = 1;
  for (int axis = 0; axis < dims; ++axis) {
    const auto total = static_cast<std::int64_t>(current.size());
    for (std::int64_t base = 0; base < total; ++base) {
      if ((base / stride) % side != 0) continue;
      for (int mu = 0; mu < side; ++mu) line[mu] = current[base + mu * stride];
      for (int nu = 0; nu < side; ++nu) {
        double acc = 0.0;
        for (int mu = 0; mu < side; ++mu) acc += matrix[nu][mu] * line[mu];
        next[base + nu * stride] = acc;
      }
    }
    std::swap(current, next);
    stride *= side;
  }
  return current;
}

double EvaluateCoefficients(const std::vector<double>& coefficients, int k,
                            int dims, std::span<const double> y) {
  if (static_cast<int>(y.size()) != dims) {
    throw Error(ErrorCode::kDimensionMismatch,
                "BernsteinEvaluate: query dimension does not match lattice");
  }
  std::vector<std::vector<double>> weights(dims);
  for (int j = 0; j < dims; ++j) {
    if (!(y[j] >= 0.0 && y[j] <= 1.0)) {
      std::ostringstream msg;
      msg << "BernsteinEvaluate: query coordinate " << y[j]
          << " outside [0, 1]";
      throw Error(ErrorCode::kDomain, msg.str());
    }
    weights[j] = BernsteinBasis(k, y[j]);
  }
  const int side = k + 1;
  double total = 0.0;
  for (std::size_t flat = 0; flat < coefficients.size(); ++flat) {
    double w = 1.0;
    std::size_t rest = flat;
    for (int j = 0; j < dims; ++j) {
      w *= weights[j][rest % side];
      rest /= side;
    }
    total += w * coefficients[flat];
  }
  return total;
}

Release MakeRelease(const char* mechanism, double epsilon, double delta) {
  Release release;
  release.mechanism = mechanism;
  release.epsilon = epsilon;
  release.delta_hat = delta;
  return release;
}

json NumberOrNull(double value) {
  if (std::isfinite(value)) return value;
  return nullptr;
}

double NumberFromJson(const json& value) {
  if (value.is_null()) return std::numeric_limits<double>::infinity();
  return value.get<double>();
}

}  // namespace

const char* MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kLaplace:
      return "laplace";
    case MechanismKind::kGaussian:
      return "gaussian";
    case MechanismKind::kExponential:
      return "exponential";
    case MechanismKind::kBernstein:
      return "bernstein";
  }
  return "laplace";
}

std::optional<MechanismKind> ParseMechanism(const std::string& name) {
  if (name == "laplace") return MechanismKind::kLaplace;
  if (name == "gaussian") return MechanismKind::kGaussian;
  if (name == "exponential") return MechanismKind::kExponential;
  if (name == "bernstein") return MechanismKind::kBernstein;
  return std::nullopt;
}

Release LaplaceRelease(std::span<const double> value, double delta,
                       double epsilon, Rng& rng,
                       const MechanismOptions& options) {
  RequirePositive(epsilon, "epsilon", "LaplaceRelease");
  Release release = MakeRelease("laplace", epsilon, delta);
  std::vector<double> out(value.begin(), value.end());
  if (CheckSensitivity(delta, options, "LaplaceRelease")) {
    release.degenerate = true;
  } else {
    const double scale = delta / epsilon;
    for (double& v : out) v += SampleLaplace(rng, scale);
  }
  release.payload = VectorPayload{std::move(out)};
  return release;
}

double GaussianSigma(double delta, double epsilon, double dp_delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kDomain, "Gaussian mechanism: epsilon must lie in (0, 1)");
  }
  if (!(dp_delta > 0.0 && dp_delta < 1.0)) {
    throw Error(ErrorCode::kDomain, "Gaussian mechanism: delta must lie in (0, 1)");
  }
  return kGaussianSafetyFactor * delta *
         std::sqrt(2.0 * std::log(1.25 / dp_delta)) / epsilon;
}

Release GaussianRelease(std::span<const double> value, double delta,
                        double epsilon, double dp_delta, Rng& rng,
                        const MechanismOptions& options) {
  const double sigma = GaussianSigma(delta, epsilon, dp_delta);
  Release release = MakeRelease("gaussian", epsilon, delta);
  release.dp_delta = dp_delta;
  std::vector<double> out(value.begin(), value.end());
  if (CheckSensitivity(delta, options, "GaussianRelease")) {
    release.degenerate = true;
  } else {
    for (double& v : out) v += sigma * SampleStandardNormal(rng);
  }
  release.payload = VectorPayload{std::move(out)};
  return release;
}

std::vector<double> ExponentialProbabilities(std::span<const double> scores,
                                             double delta, double epsilon) {
  if (scores.empty()) {
    throw Error(ErrorCode::kDomain, "ExponentialRelease: empty response list");
  }
  RequirePositive(epsilon, "epsilon", "ExponentialRelease");
  RequirePositive(delta, "sensitivity", "ExponentialRelease");
  for (double s : scores) {
    if (!std::isfinite(s)) {
      throw Error(ErrorCode::kDomain, "ExponentialRelease: scores must be finite");
    }
  }
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> probs(scores.size());
  double total = 0.0;
  for (std::size_t r = 0; r < scores.size(); ++r) {
    probs[r] = std::exp(epsilon * (scores[r] - top) / (2.0 * delta));
    total += probs[r];
  }
  // The maximal score contributes exp(0) = 1.
  if (!(total >= 1.0)) {
    throw Error(ErrorCode::kNumeric, "ExponentialRelease: weights underflowed");
  }
  for (double& p : probs) p /= total;
  return probs;
}

Release ExponentialRelease(std::span<const double> scores, double delta,
                           double epsilon, Rng& rng,
                           const MechanismOptions& options) {
  RequirePositive(epsilon, "epsilon", "ExponentialRelease");
  if (scores.empty()) {
    throw Error(ErrorCode::kDomain, "ExponentialRelease: empty response list");
  }
  Release release = MakeRelease("exponential", epsilon, delta);
  if (CheckSensitivity(delta, options, "ExponentialRelease")) {
    release.degenerate = true;
    release.payload = ChoicePayload{
        std::max_element(scores.begin(), scores.end()) - scores.begin()};
    return release;
  }
  const std::vector<double> probs =
      ExponentialProbabilities(scores, delta, epsilon);
  const double u = rng.Uniform();
  double cumulative = 0.0;
  std::int64_t choice = static_cast<std::int64_t>(probs.size()) - 1;
  for (std::size_t r = 0; r < probs.size(); ++r) {
    cumulative += probs[r];
    if (u < cumulative) {
      choice = static_cast<std::int64_t>(r);
      break;
    }
  }
  release.payload = ChoicePayload{choice};
  return release;
}

double BernsteinNoiseScale(double delta, int lattice_size, int dims,
                           double epsilon) {
  return delta * static_cast<double>(LatticePoints(lattice_size, dims)) /
         epsilon;
}

Release BernsteinRelease(std::span<const double> lattice_values,
                         int lattice_size, int dims, int order, double delta,
                         double epsilon, Rng& rng,
                         const MechanismOptions& options) {
  RequirePositive(epsilon, "epsilon", "BernsteinRelease");
  if (order < 1) throw Error(ErrorCode::kDomain, "BernsteinRelease: order must be >= 1");
  const std::int64_t points = LatticePoints(lattice_size, dims);
  if (static_cast<std::int64_t>(lattice_values.size()) != points) {
    std::ostringstream msg;
    msg << "BernsteinRelease: expected (k+1)^l = " << points
        << " lattice values, got " << lattice_values.size();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  Release release = MakeRelease("bernstein", epsilon, delta);
  std::vector<double> lattice(lattice_values.begin(), lattice_values.end());
  if (CheckSensitivity(delta, options, "BernsteinRelease")) {
    release.degenerate = true;
  } else {
    const double scale = BernsteinNoiseScale(delta, lattice_size, dims, epsilon);
    for (double& v : lattice) v += SampleLaplace(rng, scale);
  }
  release.payload = BernsteinPayload{std::move(lattice), lattice_size, dims, order};
  return release;
}

std::vector<double> BernsteinBasis(int lattice_size, double y) {
  const int k = lattice_size;
  std::vector<double> basis(k + 1);
  for (int v = 0; v <= k; ++v) {
    basis[v] = Binomial(k, v) * std::pow(y, v) * std::pow(1.0 - y, k - v);
  }
  return basis;
}

std::vector<double> IteratedBernsteinCoefficients(
    std::span<const double> lattice, int lattice_size, int dims, int order) {
  if (order < 1) throw Error(ErrorCode::kDomain, "Bernstein: order must be >= 1");
  const std::int64_t points = LatticePoints(lattice_size, dims);
  if (static_cast<std::int64_t>(lattice.size()) != points) {
    throw Error(ErrorCode::kDimensionMismatch,
                "Bernstein: lattice value count does not match (k+1)^l");
  }
  std::vector<double> current(lattice.begin(), lattice.end());
  std::vector<double> coefficients(current.size(), 0.0);
  for (int i = 1; i <= order; ++i) {
    const double weight = Binomial(order, i) * ((i % 2 == 1) ? 1.0 : -1.0);
    for (std::size_t p = 0; p < current.size(); ++p) {
      coefficients[p] += weight * current[p];
    }
    if (i < order) current = ApplyLatticeBernstein(current, lattice_size, dims);
  }
  return coefficients;
}

double BernsteinEvaluate(const BernsteinPayload& payload,
                         std::span<const double> y) {
  return BernsteinFunction(payload)(y);
}

BernsteinFunction::BernsteinFunction(const BernsteinPayload& payload)
    : coefficients_(IteratedBernsteinCoefficients(
          payload.lattice, payload.lattice_size, payload.dims, payload.order)),
      lattice_size_(payload.lattice_size),
      dims_(payload.dims) {}

double BernsteinFunction::operator()(std::span<const double> y) const {
  return EvaluateCoefficients(coefficients_, lattice_size_, dims_, y);
}

Release Respond(std::span<const double> target_output, double delta,
                const MechanismSpec& spec, Rng& rng) {
  const MechanismOptions options{spec.allow_degenerate};
  switch (spec.kind) {
    case MechanismKind::kLaplace:
      return LaplaceRelease(target_output, delta, spec.epsilon, rng, options);
    case MechanismKind::kGaussian:
      return GaussianRelease(target_output, delta, spec.epsilon, spec.dp_delta,
                             rng, options);
    case MechanismKind::kExponential:
      return ExponentialRelease(target_output, delta, spec.epsilon, rng,
                                options);
    case MechanismKind::kBernstein: {
      const int dims = spec.bernstein_dims;
      if (dims < 1) throw Error(ErrorCode::kDomain, "Bernstein: dims must be >= 1");
      const double side =
          std::round(std::pow(static_cast<double>(target_output.size()), 1.0 / dims));
      const int k = static_cast<int>(side) - 1;
      if (k < 1 || std::pow(side, dims) != static_cast<double>(target_output.size())) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "Bernstein: target output size is not (k+1)^l");
      }
      return BernsteinRelease(target_output, k, dims, spec.bernstein_order,
                              delta, spec.epsilon, rng, options);
    }
  }
  throw Error(ErrorCode::kDomain, "unknown mechanism");
}

SampleThenRespondResult SampleThenRespond(std::span<const Record> database,
                                          const TargetFunction& target,
                                          const MechanismSpec& spec,
                                          const SamplingPlan& plan,
                                          const RecordSampler& sampler,
                                          std::uint64_t seed,
                                          const SamplerOptions& options) {
  if (static_cast<int>(database.size()) != target.arity()) {
    std::ostringstream msg;
    msg << "SampleThenRespond: database has " << database.size()
        << " records but the target expects " << target.arity();
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  const PlanVerdict verdict = ValidatePlan(plan);
  if (!verdict.valid) {
    throw Error(ErrorCode::kDomain, "SampleThenRespond: invalid plan: " + verdict.message);
  }
  SensitivitySample sample =
      SampleSensitivity(target, sampler, plan.m, seed, options);
  const double delta_hat = EstimateDelta(sample, plan.k);
  Rng rng(DeriveSeed(seed, kNoiseStreamTag), 0);
  Release release = Respond(target.Evaluate(database), delta_hat, spec, rng);
  release.gamma = plan.gamma;
  return SampleThenRespondResult{std::move(release), std::move(sample)};
}

std::string SerializeRelease(const Release& release) {
  json out;
  out["format"] = kReleaseFormat;
  out["mechanism"] = release.mechanism;
  out["epsilon"] = NumberOrNull(release.epsilon);
  out["delta"] = release.dp_delta;
  out["gamma"] = release.gamma ? json(*release.gamma) : json(nullptr);
  out["delta_hat"] = release.delta_hat;
  out["degenerate"] = release.degenerate;
  if (const auto* v = std::get_if<VectorPayload>(&release.payload)) {
    out["variant"] = "vector";
    out["values"] = v->values;
  } else if (const auto* c = std::get_if<ChoicePayload>(&release.payload)) {
    out["variant"] = "choice";
    out["index"] = c->index;
  } else {
    const auto& b = std::get<BernsteinPayload>(release.payload);
    out["variant"] = "bernstein";
    out["lattice_size"] = b.lattice_size;
    out["dims"] = b.dims;
    out["order"] = b.order;
    out["values"] = b.lattice;
  }
  return out.dump() + "\n";
}

Release ParseRelease(const std::string& text) {
  try {
    const json in = json::parse(text);
    if (in.at("format").get<std::string>() != kReleaseFormat) {
      throw Error(ErrorCode::kParse, "release: unsupported format tag");
    }
    Release release;
    release.mechanism = in.at("mechanism").get<std::string>();
    release.epsilon = NumberFromJson(in.at("epsilon"));
    release.dp_delta = in.at("delta").get<double>();
    if (!in.at("gamma").is_null()) release.gamma = in.at("gamma").get<double>();
    release.delta_hat = in.at("delta_hat").get<double>();
    release.degenerate = in.at("degenerate").get<bool>();
    const std::string variant = in.at("variant").get<std::string>();
    if (variant == "vector") {
      release.payload = VectorPayload{in.at("values").get<std::vector<double>>()};
    } else if (variant == "choice") {
      release.payload = ChoicePayload{in.at("index").get<std::int64_t>()};
    } else if (variant == "bernstein") {
      release.payload = BernsteinPayload{in.at("values").get<std::vector<double>>(),
                                         in.at("lattice_size").get<int>(),
                                         in.at("dims").get<int>(),
                                         in.at("order").get<int>()};
    } else {
      throw Error(ErrorCode::kParse, "release: unknown variant " + variant);
    }
    return release;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("release: ") + e.what());
  }
}

}  // namespace sensikit
