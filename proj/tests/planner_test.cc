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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "sensikit/error.h"

namespace sensikit {
namespace {

void ExpectValid(const SamplingPlan& plan) {
  const PlanVerdict verdict = ValidatePlan(plan);
  EXPECT_TRUE(verdict.valid) << verdict.message;
}

bool Feasible(std::int64_t m, double gamma) {
  try {
    PlanMinK(m, gamma);
    return true;
  } catch (const InfeasiblePlanError&) {
    return false;
  }
}

TEST(PlanMinMTest, MatchesGridSearch) {
  for (double gamma : {0.01, 0.05, 0.1, 0.3}) {
    SCOPED_TRACE(gamma);
    const SamplingPlan plan = PlanMinM(gamma);
    EXPECT_LE(std::llabs(plan.m - oracle::GridMinSampleSize(gamma)), 1);
    ExpectValid(plan);
  }
}

TEST(PlanMinMTest, GammaFivePercent) {
  const SamplingPlan plan = PlanMinM(0.05);
  // Stationary point of log(1/rho) / (gamma - rho)^2.
  EXPECT_NEAR(0.05 - plan.rho, 2.0 * plan.rho * std::log(1.0 / plan.rho),
              1e-12);
  EXPECT_NEAR(plan.rho, 0.00418287, 1e-8);
  EXPECT_EQ(plan.m, 1305);
  EXPECT_EQ(plan.k, plan.m);
  EXPECT_EQ(plan.objective, PlanObjective::kMinM);
}

TEST(PlanMinMTest, OrderStatisticIsMaximum) {
  for (double gamma : {0.01, 0.05, 0.1}) {
    const SamplingPlan plan = PlanMinM(gamma);
    EXPECT_EQ(plan.k, plan.m) << gamma;
  }
}

TEST(PlanMinMTest, RhoApproachesImageBound) {
  // Closed form at gamma -> 1 evaluated with the bisection oracle.
  const double limit = std::exp(
      oracle::LambertSecondary(-1.0 / (2.0 * std::sqrt(std::exp(1.0)))) + 0.5);
  EXPECT_NEAR(limit, 0.2846681, 1e-6);
  EXPECT_NEAR(PlanMinM(1.0 - 1e-12).rho, limit, 1e-9);
}

TEST(PlanMinMTest, RateImproves) {
  std::vector<double> rate;
  for (double gamma : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const SamplingPlan plan = PlanMinM(gamma);
    rate.push_back(plan.m * gamma * gamma / std::log(1.0 / gamma));
  }
  for (std::size_t i = 1; i < rate.size(); ++i) EXPECT_LT(rate[i], rate[i - 1]);
}

TEST(PlanMinMTest, SampleSizeNonIncreasingInGamma) {
  std::int64_t previous = PlanMinM(0.005).m;
  for (double gamma = 0.01; gamma < 0.99; gamma += 0.01) {
    const SamplingPlan plan = PlanMinM(gamma);
    EXPECT_LE(plan.m, previous) << gamma;
    ExpectValid(plan);
    previous = plan.m;
  }
}

TEST(PlanMinMTest, DomainErrors) {
  for (double gamma : {0.0, 1.0, -0.1, std::nan("")}) {
    try {
      PlanMinM(gamma);
      ADD_FAILURE() << gamma;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDomain);
    }
  }
}

TEST(PlanMinKTest, FiveThousandSamples) {
  const SamplingPlan plan = PlanMinK(5000, 0.1);
  const double rho =
      std::exp(oracle::LambertSecondary(-1.0 / (4.0 * 5000)) / 2.0);
  EXPECT_NEAR(plan.rho, rho, 1e-12);
  EXPECT_NEAR(plan.rho, 0.002007, 1e-6);
  const double k_real =
      5000 * (1.0 - 0.1 + rho + std::sqrt(std::log(1.0 / rho) / 10000.0));
  EXPECT_EQ(plan.k, static_cast<std::int64_t>(std::ceil(k_real)));
  EXPECT_EQ(plan.k, 4635);
  ExpectValid(plan);
}

TEST(PlanMinKTest, InfeasibleReportsMinimalGamma) {
  EXPECT_TRUE(Feasible(10, 0.5));
  try {
    PlanMinK(10, 0.3);
    FAIL() << "expected infeasible";
  } catch (const InfeasiblePlanError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasiblePlan);
    const double rho = std::exp(oracle::LambertSecondary(-1.0 / 40.0) / 2.0);
    EXPECT_NEAR(rho, 0.0682335, 1e-6);
    EXPECT_NEAR(e.min_feasible_gamma(), rho + std::sqrt(std::log(1 / rho) / 20),
                1e-12);
    EXPECT_NEAR(e.min_feasible_gamma(), 0.4346226, 1e-6);
  }
}

TEST(PlanMinKTest, DeskSvmBudget) {
  const SamplingPlan plan = PlanMinK(1500, 0.05);
  EXPECT_LE(plan.k, 1500);
  EXPECT_GE(plan.k, 1);
  ExpectValid(plan);
}

TEST(PlanMinGammaTest, MatchesGridSearch) {
  for (std::int64_t m : {100, 1500, 5000}) {
    SCOPED_TRACE(m);
    const SamplingPlan plan = PlanMinGamma(m);
    EXPECT_NEAR(plan.gamma, oracle::GridMinConfidence(m), 1e-5);
    EXPECT_EQ(plan.k, m);
    ExpectValid(plan);
  }
  EXPECT_NEAR(PlanMinGamma(1500).gamma, 0.0469, 1e-4);
  EXPECT_LT(PlanMinGamma(50000).gamma, 0.05);
}

TEST(PlanMinGammaTest, SingleSampleCannotReachConfidenceBelowOne) {
  const double rho = std::exp(oracle::LambertSecondary(-0.25) / 2.0);
  const double gamma = rho + std::sqrt(std::log(1.0 / rho) / 2.0);
  EXPECT_GT(gamma, 1.0);
  try {
    PlanMinGamma(1);
    FAIL() << "expected infeasible";
  } catch (const InfeasiblePlanError& e) {
    EXPECT_NEAR(e.min_feasible_gamma(), gamma, 1e-12);
  }
}

TEST(PlanMinGammaTest, NonIncreasingInSampleSize) {
  double previous = 1.0;
  for (std::int64_t m = 2; m < 100000; m = m * 3 / 2 + 1) {
    const SamplingPlan plan = PlanMinGamma(m);
    EXPECT_LE(plan.gamma, previous) << m;
    ExpectValid(plan);
    previous = plan.gamma;
  }
}

TEST(PlanMinGammaTest, EqualsFeasibilityThresholdOfMinK) {
  for (std::int64_t m : {10, 100, 1500, 5000, 50000}) {
    SCOPED_TRACE(m);
    double lo = 1e-6;  // infeasible
    double hi = 0.999;  // feasible
    ASSERT_FALSE(Feasible(m, lo));
    ASSERT_TRUE(Feasible(m, hi));
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      (Feasible(m, mid) ? hi : lo) = mid;
    }
    EXPECT_NEAR(PlanMinGamma(m).gamma, hi, 1e-9);
  }
}

TEST(PlanMinKTest, AllFeasiblePlansValidate) {
  for (std::int64_t m : {5, 50, 500, 5000, 50000}) {
    for (double gamma = 0.01; gamma < 1.0; gamma += 0.03) {
      if (!Feasible(m, gamma)) continue;
      const SamplingPlan plan = PlanMinK(m, gamma);
      EXPECT_GE(plan.k, 1);
      EXPECT_LE(plan.k, m);
      ExpectValid(plan);
    }
  }
}

TEST(ValidatePlanTest, Examples) {
  ExpectValid(PlanMinM(0.05));

  PlanVerdict v = ValidatePlan({0.6, 1000000, 1000000, 0.9});
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.violation, PlanViolation::kRhoRange);

  v = ValidatePlan({0.01, 10, 10, 0.05});
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.violation, PlanViolation::kSampleSizeBound);

  // log(100) / (2 * 0.04^2) = 1439.1...
  EXPECT_EQ(ValidatePlan({0.01, 1439, 1439, 0.05}).violation,
            PlanViolation::kSampleSizeBound);
  ExpectValid({0.01, 1440, 1440, 0.05});
}

TEST(ValidatePlanTest, RejectsHalfRho) {
  EXPECT_EQ(ValidatePlan({0.5, 1000000, 1000000, 0.9}).violation,
            PlanViolation::kRhoRange);
}

TEST(ValidatePlanTest, ReportsFirstViolation) {
  EXPECT_EQ(ValidatePlan({0.01, 10, 10, 1.5}).violation,
            PlanViolation::kGammaRange);
  EXPECT_EQ(ValidatePlan({0.01, 0, 0, 0.05}).violation,
            PlanViolation::kSampleSize);
  EXPECT_EQ(ValidatePlan({0.01, 2000, 2001, 0.05}).violation,
            PlanViolation::kIndexRange);
  EXPECT_EQ(ValidatePlan({0.01, 2000, 1000, 0.05}).violation,
            PlanViolation::kOrderStatisticBound);
}

TEST(TransferConfidenceTest, Examples) {
  EXPECT_EQ(TransferConfidence(0.05, 0.0, 12).gamma, 0.05);
  const TransferredConfidence t = TransferConfidence(0.05, 1e-4, 199);
  EXPECT_NEAR(t.gamma, 0.15, 1e-15);
  EXPECT_FALSE(t.vacuous);
  const TransferredConfidence capped = TransferConfidence(0.9, 1.0, 99);
  EXPECT_EQ(capped.gamma, 1.0);
  EXPECT_TRUE(capped.vacuous);
  EXPECT_THROW(TransferConfidence(0.05, -1e-9, 10), Error);
}

TEST(BudgetTest, Validation) {
  EXPECT_NO_THROW(ValidateBudget({1.0, 0.0, 0.05}));
  EXPECT_THROW(ValidateBudget({0.0, 0.0, 0.05}), Error);
  EXPECT_THROW(ValidateBudget({1.0, 1.5, 0.05}), Error);
  EXPECT_THROW(ValidateBudget({1.0, 0.0, 1.0}), Error);
}

TEST(PlanObjectiveTest, NamesRoundTrip) {
  for (PlanObjective o : {PlanObjective::kMinM, PlanObjective::kMinK,
                          PlanObjective::kMinGamma, PlanObjective::kManual}) {
    EXPECT_EQ(ParsePlanObjective(PlanObjectiveName(o)), o);
  }
  EXPECT_FALSE(ParsePlanObjective("fastest").has_value());
}

}  // namespace
}  // namespace sensikit
