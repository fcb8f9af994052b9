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

#include "sensikit/planner.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sensikit/error.h"
#include "sensikit/numerics.h"

namespace sensikit {
namespace {

void RequireGamma(double gamma, const char* where) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    std::ostringstream msg;
    msg << where << ": gamma must lie in (0, 1), got " << gamma;
    throw Error(ErrorCode::kDomain, msg.str());
  }
}

void RequireSampleSize(std::int64_t m, const char* where) {
  if (m < 1) {
    std::ostringstream msg;
    msg << where << ": m must be >= 1, got " << m;
    throw Error(ErrorCode::kDomain, msg.str());
  }
}

// ceil(m (1 - gamma + rho + rho')) clamped to [1, m].
std::int64_t OrderStatisticIndex(std::int64_t m, double gamma, double rho) {
  const double md = static_cast<double>(m);
  const double level = 1.0 - gamma + rho + DkwDeviation(m, rho);
  const auto k = static_cast<std::int64_t>(std::ceil(md * level));
  return std::clamp<std::int64_t>(k, 1, m);
}

PlanVerdict Reject(PlanViolation violation, const std::string& message) {
  return PlanVerdict{false, violation, message};
}

}  // namespace

void ValidateBudget(const PrivacyBudget& budget) {
  if (!(budget.epsilon > 0.0)) {
    throw Error(ErrorCode::kDomain, "privacy budget: epsilon must be > 0");
  }
  if (!(budget.delta >= 0.0 && budget.delta <= 1.0)) {
    throw Error(ErrorCode::kDomain, "privacy budget: delta must lie in [0, 1]");
  }
  RequireGamma(budget.gamma, "privacy budget");
}

const char* PlanObjectiveName(PlanObjective objective) {
  switch (objective) {
    case PlanObjective::kMinM:
      return "min-m";
    case PlanObjective::kMinK:
      return "min-k";
    case PlanObjective::kMinGamma:
      return "min-gamma";
    case PlanObjective::kManual:
      return "manual";
  }
  return "manual";
}

std::optional<PlanObjective> ParsePlanObjective(const std::string& name) {
  if (name == "min-m") return PlanObjective::kMinM;
  if (name == "min-k") return PlanObjective::kMinK;
  if (name == "min-gamma") return PlanObjective::kMinGamma;
  if (name == "manual") return PlanObjective::kManual;
  return std::nullopt;
}

PlanVerdict ValidatePlan(const SamplingPlan& plan) {
  std::ostringstream msg;
  if (!(plan.gamma > 0.0 && plan.gamma < 1.0)) {
    msg << "gamma = " << plan.gamma << " is not in (0, 1)";
    return Reject(PlanViolation::kGammaRange, msg.str());
  }
  if (!(plan.rho > 0.0 && plan.rho < std::min(plan.gamma, 0.5))) {
    msg << "rho = " << plan.rho << " is not in (0, min(gamma, 1/2))";
    return Reject(PlanViolation::kRhoRange, msg.str());
  }
  if (plan.m < 1) {
    msg << "m = " << plan.m << " must be >= 1";
    return Reject(PlanViolation::kSampleSize, msg.str());
  }
  if (plan.k < 1 || plan.k > plan.m) {
    msg << "k = " << plan.k << " is not in [1, m = " << plan.m << "]";
    return Reject(PlanViolation::kIndexRange, msg.str());
  }
  const double md = static_cast<double>(plan.m);
  const double gap = plan.gamma - plan.rho;
  const double m_needed = std::log(1.0 / plan.rho) / (2.0 * gap * gap);
  if (md < m_needed * (1.0 - kPlanRelativeSlack)) {
    msg << "m = " << plan.m << " is below log(1/rho)/(2(gamma-rho)^2) = "
        << m_needed << " (requires m >= "
        << static_cast<std::int64_t>(std::ceil(m_needed)) << ")";
    return Reject(PlanViolation::kSampleSizeBound, msg.str());
  }
  const double k_needed =
      md * (1.0 - plan.gamma + plan.rho + DkwDeviation(plan.m, plan.rho));
  if (static_cast<double>(plan.k) < k_needed * (1.0 - kPlanRelativeSlack)) {
    msg << "k = " << plan.k
        << " is below m(1 - gamma + rho + sqrt(log(1/rho)/(2m))) = "
        << k_needed;
    return Reject(PlanViolation::kOrderStatisticBound, msg.str());
  }
  return PlanVerdict{};
}

SamplingPlan PlanMinM(double gamma) {
  RequireGamma(gamma, "PlanMinM");
  const double w = LambertW(LambertBranch::kSecondary,
                            -gamma / (2.0 * std::sqrt(std::exp(1.0))));
  const double rho = std::exp(w + 0.5);
  const double gap = gamma - rho;
  const auto m = static_cast<std::int64_t>(
      std::ceil(std::log(1.0 / rho) / (2.0 * gap * gap)));
  SamplingPlan plan{rho, m, OrderStatisticIndex(m, gamma, rho), gamma,
                    PlanObjective::kMinM};
  return plan;
}

double OptimalRhoForSampleSize(std::int64_t m) {
  RequireSampleSize(m, "OptimalRhoForSampleSize");
  const double w = LambertW(LambertBranch::kSecondary,
                            -1.0 / (4.0 * static_cast<double>(m)));
  return std::exp(0.5 * w);
}

SamplingPlan PlanMinK(std::int64_t m, double gamma) {
  RequireSampleSize(m, "PlanMinK");
  RequireGamma(gamma, "PlanMinK");
  const double rho = OptimalRhoForSampleSize(m);
  const double min_gamma = rho + DkwDeviation(m, rho);
  if (gamma < min_gamma) {
    std::ostringstream msg;
    msg << "PlanMinK: gamma = " << gamma << " is infeasible with m = " << m
        << "; the smallest feasible gamma is " << min_gamma
        << " (increase m or gamma)";
    throw InfeasiblePlanError(msg.str(), min_gamma);
  }
  return SamplingPlan{rho, m, OrderStatisticIndex(m, gamma, rho), gamma,
                      PlanObjective::kMinK};
}

SamplingPlan PlanMinGamma(std::int64_t m) {
  RequireSampleSize(m, "PlanMinGamma");
  const double rho = OptimalRhoForSampleSize(m);
  const double gamma = rho + DkwDeviation(m, rho);
  if (gamma >= 1.0) {
    std::ostringstream msg;
    msg << "PlanMinGamma: m = " << m << " cannot reach any gamma < 1 (best is "
        << gamma << ")";
    throw InfeasiblePlanError(msg.str(), gamma);
  }
  return SamplingPlan{rho, m, m, gamma, PlanObjective::kMinGamma};
}

TransferredConfidence TransferConfidence(double gamma, double tau,
                                         std::int64_t n) {
  RequireGamma(gamma, "TransferConfidence");
  if (!(tau >= 0.0)) {
    throw Error(ErrorCode::kDomain,
                "TransferConfidence: KL bound tau must be >= 0");
  }
  if (n < 1) {
    throw Error(ErrorCode::kDomain, "TransferConfidence: n must be >= 1");
  }
  const double bound =
      gamma + std::sqrt(static_cast<double>(n + 1) * tau / 2.0);
  if (bound >= 1.0) return TransferredConfidence{1.0, true};
  return TransferredConfidence{bound, false};
}

}  // namespace sensikit
