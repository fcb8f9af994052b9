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

#ifndef SENSIKIT_MECHANISMS_H_
#define SENSIKIT_MECHANISMS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sensikit/planner.h"
#include "sensikit/rng.h"
#include "sensikit/sampler.h"
#include "sensikit/target.h"

namespace sensikit {

enum class MechanismKind { kLaplace, kGaussian, kExponential, kBernstein };

const char* MechanismName(MechanismKind kind);
std::optional<MechanismKind> ParseMechanism(const std::string& name);

struct VectorPayload {
  std::vector<double> values;
};

struct ChoicePayload {
  std::int64_t index = 0;
};

// Noisy lattice over {0, 1/k, ..., 1}^dims, flattened with coordinate 0
// varying fastest: index = nu_0 + (k+1) nu_1 + (k+1)^2 nu_2 + ...
struct BernsteinPayload {
  std::vector<double> lattice;
  int lattice_size = 0;  // k
  int dims = 1;          // l
  int order = 1;         // h
};

struct Release {
  std::string mechanism;
  std::variant<VectorPayload, ChoicePayload, BernsteinPayload> payload;
  double epsilon = 0.0;
  double dp_delta = 0.0;
  std::optional<double> gamma;  // set when the sensitivity was sampled
  double delta_hat = 0.0;
  // Released without noise because the sensitivity was zero and the caller
  // opted in. Such a release carries no privacy guarantee.
  bool degenerate = false;
};

struct MechanismOptions {
  bool allow_degenerate = false;
};

// Adds i.i.d. Laplace(delta / epsilon) noise to every coordinate.
Release LaplaceRelease(std::span<const double> value, double delta,
                       double epsilon, Rng& rng,
                       const MechanismOptions& options = {});

// Noise standard deviation used by GaussianRelease: the boundary value
// delta sqrt(2 log(1.25 / dp_delta)) / epsilon, scaled by 1 + 1e-6 so that
// the required strict inequality holds.
double GaussianSigma(double delta, double epsilon, double dp_delta);
inline constexpr double kGaussianSafetyFactor = 1.0 + 1e-6;

// Requires 0 < epsilon < 1 and 0 < dp_delta < 1.
Release GaussianRelease(std::span<const double> value, double delta,
                        double epsilon, double dp_delta, Rng& rng,
                        const MechanismOptions& options = {});

// Selection probabilities proportional to exp(epsilon s_r / (2 delta)).
std::vector<double> ExponentialProbabilities(std::span<const double> scores,
                                             double delta, double epsilon);

Release ExponentialRelease(std::span<const double> scores, double delta,
                           double epsilon, Rng& rng,
                           const MechanismOptions& options = {});

// Laplace scale delta (k+1)^dims / epsilon.
double BernsteinNoiseScale(double delta, int lattice_size, int dims,
                           double epsilon);

// lattice_values must hold (k+1)^dims entries: the target evaluated on the
// lattice. epsilon = +infinity passes the lattice through unchanged.
Release BernsteinRelease(std::span<const double> lattice_values,
                         int lattice_size, int dims, int order, double delta,
                         double epsilon, Rng& rng,
                         const MechanismOptions& options = {});

// Weights C(k, v) y^v (1 - y)^(k - v) for v = 0..k.
std::vector<double> BernsteinBasis(int lattice_size, double y);

// Coefficients of the order-h iterated operator sum_{i=1..h} C(h,i)(-1)^(i-1)
// B^i expressed on the lattice: sum_i C(h,i)(-1)^(i-1) M^(i-1) g, where M is
// the lattice-to-lattice Bernstein map.
std::vector<double> IteratedBernsteinCoefficients(
    std::span<const double> lattice, int lattice_size, int dims, int order);

// Evaluates the (iterated) Bernstein polynomial at y in [0,1]^dims.
double BernsteinEvaluate(const BernsteinPayload& payload,
                         std::span<const double> y);

// Evaluator that caches the iterated coefficients for repeated queries.
class BernsteinFunction {
 public:
  explicit BernsteinFunction(const BernsteinPayload& payload);

  double operator()(std::span<const double> y) const;

 private:
  std::vector<double> coefficients_;
  int lattice_size_;
  int dims_;
};

struct MechanismSpec {
  MechanismKind kind = MechanismKind::kLaplace;
  double epsilon = 1.0;
  double dp_delta = 0.0;  // Gaussian only
  int bernstein_dims = 1;
  int bernstein_order = 1;
  bool allow_degenerate = false;
};

// Applies the mechanism to a target output at sensitivity delta. For the
// Bernstein mechanism the output is the lattice and k is inferred from its
// size.
Release Respond(std::span<const double> target_output, double delta,
                const MechanismSpec& spec, Rng& rng);

struct SampleThenRespondResult {
  Release release;
  SensitivitySample sample;
};

// Estimates the sensitivity from plan.m records-distribution draws (never
// touching `database`), takes the plan.k-th order statistic and responds
// with the selected mechanism at that sensitivity.
SampleThenRespondResult SampleThenRespond(std::span<const Record> database,
                                          const TargetFunction& target,
                                          const MechanismSpec& spec,
                                          const SamplingPlan& plan,
                                          const RecordSampler& sampler,
                                          std::uint64_t seed,
                                          const SamplerOptions& options = {});

// Tagged JSON record with variant, mechanism, budget, delta_hat and payload.
std::string SerializeRelease(const Release& release);
Release ParseRelease(const std::string& text);

}  // namespace sensikit

#endif  // SENSIKIT_MECHANISMS_H_
