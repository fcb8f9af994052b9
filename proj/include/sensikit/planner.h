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

#ifndef SENSIKIT_PLANNER_H_
#define SENSIKIT_PLANNER_H_

#include <cstdint>
#include <optional>
#include <string>

namespace sensikit {

// (epsilon, delta, gamma) target of random differential privacy.
struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 0.0;
  double gamma = 0.05;
};

// Throws Error(kDomain) unless epsilon > 0, 0 <= delta <= 1, 0 < gamma < 1.
void ValidateBudget(const PrivacyBudget& budget);

enum class PlanObjective { kMinM, kMinK, kMinGamma, kManual };

const char* PlanObjectiveName(PlanObjective objective);
std::optional<PlanObjective> ParsePlanObjective(const std::string& name);

// Sampler parameters: draw m sensitivities and use the k-th smallest
// (1-based) as the sensitivity estimate. rho is the confidence of the
// uniform CDF approximation.
struct SamplingPlan {
  double rho = 0.0;
  std::int64_t m = 0;
  std::int64_t k = 0;
  double gamma = 0.0;
  PlanObjective objective = PlanObjective::kManual;
};

enum class PlanViolation {
  kNone,
  kGammaRange,         // gamma not in (0, 1)
  kRhoRange,           // rho not in (0, min(gamma, 1/2))
  kSampleSize,         // m < 1
  kIndexRange,         // k not in [1, m]
  kSampleSizeBound,    // m < log(1/rho) / (2 (gamma - rho)^2)
  kOrderStatisticBound // k < m (1 - gamma + rho + sqrt(log(1/rho) / (2m)))
};

struct PlanVerdict {
  bool valid = true;
  PlanViolation violation = PlanViolation::kNone;
  std::string message;
};

// Relative slack applied to the two inequality checks, absorbing rounding in
// plans that sit exactly on the boundary (k = m for the min-gamma plan).
inline constexpr double kPlanRelativeSlack = 1e-12;

PlanVerdict ValidatePlan(const SamplingPlan& plan);

// Smallest m achieving confidence gamma; k comes out equal to m.
SamplingPlan PlanMinM(double gamma);

// Smallest order-statistic index for a given sample size and confidence.
// Throws InfeasiblePlanError (carrying the smallest feasible gamma) when
// gamma < rho + sqrt(log(1/rho) / (2m)).
SamplingPlan PlanMinK(std::int64_t m, double gamma);

// Smallest confidence gamma reachable with m samples; k = m. Throws
// InfeasiblePlanError when even that gamma is >= 1 (m = 1).
SamplingPlan PlanMinGamma(std::int64_t m);

// The rho shared by the min-k and min-gamma operating points.
double OptimalRhoForSampleSize(std::int64_t m);

struct TransferredConfidence {
  double gamma = 0.0;
  bool vacuous = false;  // bound reached 1 and was capped
};

// Confidence of the same mechanism with respect to a second record
// distribution Q with KL(P || Q) <= tau: gamma + sqrt((n + 1) tau / 2).
TransferredConfidence TransferConfidence(double gamma, double tau,
                                         std::int64_t n);

}  // namespace sensikit

#endif  // SENSIKIT_PLANNER_H_
