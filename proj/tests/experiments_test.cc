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

#include "sensikit/experiments.h"

#include <cmath>

#include <gtest/gtest.h>

#include "sensikit/error.h"

namespace sensikit {
namespace {

ExperimentConfig Small(ExperimentKind kind) {
  ExperimentConfig c = DefaultExperimentConfig(kind);
  c.master_seed = 11;
  switch (kind) {
    case ExperimentKind::kAnalyticVsSampled:
      c.gammas = {0.2, 0.3};
      c.n = 100;
      c.repeats = 4;
      break;
    case ExperimentKind::kBoundedMean:
      c.gammas = {0.3};
      c.dims = {1, 2};
      c.n = 50;
      c.repeats = 3;
      break;
    case ExperimentKind::kSvmSensitivity:
      c.gammas = {0.2, 0.3};
      c.dims = {2};
      c.ms = {80};
      c.n = 30;
      break;
    case ExperimentKind::kSvmUtility:
      c.gammas = {0.3};
      c.epsilons = {1, 10};
      c.ms = {80};
      c.n = 30;
      c.repeats = 5;
      c.test_size = 100;
      break;
    case ExperimentKind::kKdeUtility:
      c.gammas = {0.3};
      c.epsilons = {1, 100};
      c.ms = {100};
      c.orders = {1, 2};
      c.n = 50;
      c.repeats = 3;
      c.eval_grid = 21;
      break;
  }
  return c;
}

const ExperimentKind kAll[] = {
    ExperimentKind::kAnalyticVsSampled, ExperimentKind::kBoundedMean,
    ExperimentKind::kSvmSensitivity, ExperimentKind::kSvmUtility,
    ExperimentKind::kKdeUtility};

TEST(ExperimentTest, ByteIdenticalAcrossRunsAndThreads) {
  for (ExperimentKind kind : kAll) {
    SCOPED_TRACE(ExperimentName(kind));
    ExperimentConfig config = Small(kind);
    config.threads = 1;
    const std::string one = RunExperiment(config).ToCsv();
    EXPECT_EQ(RunExperiment(config).ToCsv(), one);
    config.threads = 4;
    EXPECT_EQ(RunExperiment(config).ToCsv(), one);
    config.master_seed = 12;
    EXPECT_NE(RunExperiment(config).ToCsv(), one);
  }
}

TEST(ExperimentTest, CsvLayout) {
  for (ExperimentKind kind : kAll) {
    const CsvTable table = RunExperiment(Small(kind));
    const std::string csv = table.ToCsv();
    const std::string name = ExperimentName(kind);
    EXPECT_EQ(csv.rfind("# sensikit-experiment v1, experiment=" + name + "\n", 0), 0u);
    EXPECT_EQ(csv.find('\r'), std::string::npos);
    EXPECT_EQ(csv.back(), '\n');
    ASSERT_FALSE(table.rows.empty());
    for (const auto& row : table.rows) EXPECT_EQ(row.size(), table.columns.size());
    EXPECT_FALSE(table.columns.empty());
  }
}

TEST(ExperimentTest, AnalyticColumns) {
  const CsvTable t = RunExperiment(Small(ExperimentKind::kAnalyticVsSampled));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_DOUBLE_EQ(t.Number(0, "delta_analytic"), std::log(1 / 0.2) / 100);
  EXPECT_EQ(t.Number(0, "m"), 61);
  EXPECT_GT(t.Number(0, "delta_sampled_mean"), 0.0);
  EXPECT_THROW(t.ColumnIndex("nope"), Error);
}

TEST(ExperimentTest, InfeasibleBudgetsSkipped) {
  ExperimentConfig c = Small(ExperimentKind::kAnalyticVsSampled);
  c.ms = {5, 1000};
  c.gammas = {0.1};
  const CsvTable t = RunExperiment(c);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.Number(0, "m"), 1000);
}

TEST(ExperimentTest, Validation) {
  for (ExperimentKind kind : kAll) {
    ExperimentConfig c = Small(kind);
    c.gammas.clear();
    EXPECT_THROW(RunExperiment(c), Error);
    c = Small(kind);
    c.repeats = 0;
    EXPECT_THROW(RunExperiment(c), Error);
  }
  ExperimentConfig c = Small(ExperimentKind::kKdeUtility);
  c.epsilons.clear();
  EXPECT_THROW(ValidateExperimentConfig(c), Error);
  c = Small(ExperimentKind::kSvmSensitivity);
  c.dims.clear();
  EXPECT_THROW(ValidateExperimentConfig(c), Error);
}

TEST(ExperimentTest, DefaultsAndNames) {
  for (ExperimentKind kind : kAll) {
    EXPECT_EQ(ParseExperiment(ExperimentName(kind)), kind);
    EXPECT_NO_THROW(ValidateExperimentConfig(DefaultExperimentConfig(kind)));
    EXPECT_NO_THROW(ValidateExperimentConfig(DefaultExperimentConfig(kind, true)));
  }
  EXPECT_FALSE(ParseExperiment("fig9").has_value());
  const ExperimentConfig svm = DefaultExperimentConfig(ExperimentKind::kSvmUtility);
  EXPECT_EQ(svm.n, 200);
  EXPECT_EQ(svm.repeats, 100);
  const ExperimentConfig svm_large =
      DefaultExperimentConfig(ExperimentKind::kSvmUtility, true);
  EXPECT_EQ(svm_large.n, 1000);
  EXPECT_EQ(svm_large.repeats, 500);
  const ExperimentConfig kde = DefaultExperimentConfig(ExperimentKind::kKdeUtility);
  EXPECT_EQ(kde.ms, std::vector<std::int64_t>{5000});
  EXPECT_EQ(DefaultExperimentConfig(ExperimentKind::kKdeUtility, true).ms,
            std::vector<std::int64_t>{50000});
}

}  // namespace
}  // namespace sensikit
