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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>

#include "oracles.h"
#include "sensikit/dataset.h"
#include "sensikit/error.h"
#include "sensikit/extern_target.h"
#include "sensikit/generators.h"
#include "sensikit/sampler.h"
#include "sensikit/svm.h"
#include "sensikit/targets.h"

namespace sensikit {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::kNumeric;
}

std::vector<Record> Draw(const RecordSampler& sampler, int n, std::uint64_t seed) {
  return DrawDatabase(sampler, n, seed);
}

// ---------------------------------------------------------------- mean

TEST(MeanTargetTest, Basics) {
  MeanTarget one(1, 2);
  EXPECT_EQ(one.Evaluate(std::vector<Record>{{0.0}, {1.0}}), std::vector<double>{0.5});
  EXPECT_FALSE(one.GlobalSensitivity().has_value());
  MeanTarget cube(3, 40, true);
  EXPECT_DOUBLE_EQ(*cube.GlobalSensitivity(), 3.0 / 40);
  EXPECT_EQ(cube.norm(), OutputNorm::kL1);
  EXPECT_EQ(CodeOf([&] { one.Evaluate(std::vector<Record>{{0.0}}); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([&] { one.Evaluate(std::vector<Record>{{0.0}, {1.0, 2.0}}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(MeanTargetTest, PermutationInvariant) {
  UniformCubeRecords records(2);
  std::vector<Record> db = Draw(records, 25, 3);
  MeanTarget target(2, 25);
  const std::vector<double> before = target.Evaluate(db);
  std::reverse(db.begin(), db.end());
  const std::vector<double> after = target.Evaluate(db);
  for (int j = 0; j < 2; ++j) EXPECT_NEAR(before[j], after[j], 1e-15);
}

// ----------------------------------------------------------------- SVM

SvmConfig Config(double C, int d) {
  SvmConfig c;
  c.C = C;
  c.d = d;
  return c;
}

TEST(SvmTest, DuplicatedDatasetGivesSameModel) {
  TwoGaussiansRecords records(2);
  const std::vector<Record> db = Draw(records, 60, 8);
  std::vector<Record> doubled = db;
  doubled.insert(doubled.end(), db.begin(), db.end());
  const SvmModel a = SvmTrain(db, Config(3, 2));
  const SvmModel b = SvmTrain(doubled, Config(3, 2));
  ASSERT_TRUE(a.converged);
  ASSERT_TRUE(b.converged);
  for (int j = 0; j < 2; ++j) EXPECT_NEAR(a.w[j], b.w[j], 1e-6);
  EXPECT_NEAR(a.b, b.b, 1e-6);
}

TEST(SvmTest, TwoPointsFlipAtMidpoint) {
  const std::vector<Record> db{{0.0, -1.0}, {1.0, 1.0}};
  const SvmModel model = SvmTrain(db, Config(1000, 1));
  const auto brute = oracle::BruteForceSvm(
      std::vector<std::vector<double>>(db.begin(), db.end()), 1000);
  EXPECT_NEAR(-model.b / model.w[0], 0.5, 1e-3);
  EXPECT_NEAR(-brute.b / brute.w[0], 0.5, 1e-3);
}

TEST(SvmTest, SingleClassGivesZeroNormal) {
  const std::vector<Record> db{{0.1, 0.4, 1.0}, {0.9, 0.2, 1.0}, {0.5, 0.5, 1.0}};
  const SvmModel model = SvmTrain(db, Config(3, 2));
  EXPECT_EQ(model.w, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(model.b, 1.0);
  const auto brute = oracle::BruteForceSvm(
      std::vector<std::vector<double>>(db.begin(), db.end()), 3);
  EXPECT_NEAR(brute.objective, 0.0, 1e-9);
}

TEST(SvmTest, ObjectiveMatchesBruteForce) {
  TwoGaussiansRecords two_d(2);
  UniformCubeRecords raw(2);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    SCOPED_TRACE(seed);
    const int d = 1 + static_cast<int>(seed % 2);
    const int n = 2 + static_cast<int>(seed % 3);
    std::vector<std::vector<double>> db;
    Rng rng(seed, 0);
    for (int i = 0; i < n; ++i) {
      Record r = seed < 6 ? two_d.Draw(rng) : raw.Draw(rng);
      if (seed >= 6) r.push_back(rng.Uniform() < 0.5 ? -1.0 : 1.0);
      if (d == 1) r = {r[0], r.back()};
      db.push_back(r);
    }
    const double C = seed % 4 == 0 ? 30.0 : 3.0;
    const SvmModel model = SvmTrain(std::vector<Record>(db.begin(), db.end()), Config(C, d));
    const double found = SvmPrimalObjective(std::vector<Record>(db.begin(), db.end()),
                                            C, model.w, model.b);
    EXPECT_NEAR(found, oracle::SvmObjective(db, C, model.w, model.b), 1e-12);
    const auto brute = oracle::BruteForceSvm(db, C);
    EXPECT_NEAR(found, brute.objective, 1e-4);
  }
}

TEST(SvmTest, DeterministicAndOrderSensitiveInputOnly) {
  TwoGaussiansRecords records(3);
  const std::vector<Record> db = Draw(records, 100, 21);
  const SvmModel a = SvmTrain(db, Config(3, 3));
  const SvmModel b = SvmTrain(db, Config(3, 3));
  EXPECT_EQ(a.w, b.w);
  EXPECT_EQ(a.b, b.b);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(SvmTest, InvalidRecords) {
  EXPECT_EQ(CodeOf([] { SvmTrain(std::vector<Record>{{0.5, 2.0}}, Config(3, 1)); }),
            ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([] {
              SvmTrain(std::vector<Record>{{std::nan(""), 1.0}}, Config(3, 1));
            }),
            ErrorCode::kDomain);
  EXPECT_EQ(CodeOf([] { SvmTrain(std::vector<Record>{{0.5, 0.1, 1.0}}, Config(3, 1)); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([] { SvmTrain(std::vector<Record>{}, Config(3, 1)); }),
            ErrorCode::kDomain);
}

TEST(SvmTest, GlobalSensitivityFormula) {
  EXPECT_NEAR(SvmGlobalSensitivity(3, 2, 1000), 10.509, 1e-3);
  EXPECT_DOUBLE_EQ(SvmGlobalSensitivity(0, 5, 1000), 2.0);
  EXPECT_NEAR(SvmGlobalSensitivity(3, 16, 1000), 26.192, 1e-3);
  EXPECT_NEAR(SvmGlobalSensitivity(3, 8, 1000), 19.07, 1e-2);
  SvmTarget target(Config(3, 2), 1000);
  EXPECT_DOUBLE_EQ(*target.GlobalSensitivity(), SvmGlobalSensitivity(3, 2, 1000));
}

TEST(SvmTargetTest, PinnedSolutionHasZeroSensitivity) {
  // Single-class databases always give (w, b) = (0, 1).
  SvmTarget target(Config(3, 2), 4);
  const std::vector<Record> d1{{0.1, 0.1, 1}, {0.2, 0.3, 1}, {0.4, 0.1, 1}, {0.1, 0.1, 1}};
  std::vector<Record> d2 = d1;
  d2.back() = {0.9, 0.7, 1};
  EXPECT_EQ(NormDistance(target.norm(), target.Evaluate(d1), target.Evaluate(d2)), 0.0);
}

TEST(SvmTargetTest, SampledSensitivityBelowGlobal) {
  SvmTarget target(Config(3, 2), 100);
  TwoGaussiansRecords records(2);
  const SensitivitySample s = SampleSensitivity(target, records, 300, 5);
  EXPECT_LE(s.values.back(), *target.GlobalSensitivity());
  EXPECT_LT(EstimateDelta(s, s.m()), *target.GlobalSensitivity() / 10);
}

TEST(SvmTargetTest, TwoGaussianNonPrivateErrorBelowOnePercent) {
  TwoGaussiansRecords records(2);
  double total = 0.0;
  const int runs = 10;
  for (int r = 0; r < runs; ++r) {
    const SvmModel model = SvmTrain(Draw(records, 1000, 500 + r), Config(3, 2));
    total += SvmMisclassification(Draw(records, 5000, 900 + r), model.w, model.b);
  }
  EXPECT_LT(total / runs, 0.01);
}

// ----------------------------------------------------------------- KDE

TEST(KdeTest, SingleRecordPeak) {
  const KdeConfig config{0.05, 10};
  KdeTarget target(config, 1);
  const std::vector<double> lattice = target.Evaluate(std::vector<Record>{{0.5}});
  ASSERT_EQ(lattice.size(), 11u);
  const double bw = 0.05;
  const double mass = oracle::NormalCdf(0.5 / bw) - oracle::NormalCdf(-0.5 / bw);
  EXPECT_NEAR(lattice[5], 1.0 / (bw * std::sqrt(2 * M_PI) * mass), 1e-12);
  EXPECT_EQ(*std::max_element(lattice.begin(), lattice.end()), lattice[5]);
}

TEST(KdeTest, NonNegativeAndSymmetric) {
  KdeTarget target({0.08, 10}, 4);
  const std::vector<double> lattice =
      target.Evaluate(std::vector<Record>{{0.2}, {0.8}, {0.45}, {0.55}});
  for (int j = 0; j <= 10; ++j) {
    EXPECT_GE(lattice[j], 0.0);
    EXPECT_NEAR(lattice[j], lattice[10 - j], 1e-12);
  }
}

TEST(KdeTest, RiemannSumNearOne) {
  KdeTarget target({0.05, 10}, 1000);
  GaussianMixtureRecords records;
  const std::vector<double> lattice = target.Evaluate(Draw(records, 1000, 9));
  EXPECT_NEAR(std::accumulate(lattice.begin(), lattice.end(), 0.0) / 10, 1.0, 0.05);
}

TEST(KdeTest, KernelIntegratesToOne) {
  for (double center : {0.0, 0.02, 0.5, 0.97}) {
    double sum = 0.0;
    const int steps = 20000;
    for (int i = 0; i < steps; ++i) {
      sum += TruncatedKernel((i + 0.5) / steps, center, 0.05) / steps;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6) << center;
  }
}

TEST(KdeTest, IdenticalDatabasesZeroSensitivity) {
  KdeTarget target({0.05, 10}, 3);
  const std::vector<Record> db{{0.1}, {0.3}, {0.3}};
  EXPECT_EQ(NormDistance(target.norm(), target.Evaluate(db), target.Evaluate(db)), 0.0);
}

TEST(KdeTest, GlobalBoundDominatesSamples) {
  const KdeConfig config{0.05, 10};
  KdeTarget target(config, 50);
  GaussianMixtureRecords records;
  const SensitivitySample s = SampleSensitivity(target, records, 2000, 6);
  EXPECT_LE(s.values.back(), *target.GlobalSensitivity());
  // A record at the boundary attains the bound at lattice point 0.
  const std::vector<Record> a(50, Record{0.5});
  std::vector<Record> b = a;
  b.back() = {0.0};
  std::vector<Record> c = a;
  c.back() = {1.0};
  EXPECT_GT(NormDistance(target.norm(), target.Evaluate(b), target.Evaluate(c)),
            0.99 * KdeGlobalSensitivity(config, 50));
}

TEST(KdeTest, RecordsOutsideUnitInterval) {
  KdeTarget target({0.05, 10}, 1);
  EXPECT_EQ(CodeOf([&] { target.Evaluate(std::vector<Record>{{1.5}}); }),
            ErrorCode::kDomain);
}

// ---------------------------------------------------------- generators

TEST(GeneratorTest, ExponentialMean) {
  ExponentialRecords records(1.0);
  const auto db = Draw(records, 100000, 1);
  double sum = 0.0;
  for (const Record& r : db) sum += r[0];
  EXPECT_NEAR(sum / db.size(), 1.0, 0.02);
}

TEST(GeneratorTest, TwoGaussiansBalancedAndClipped) {
  TwoGaussiansRecords records(3);
  const auto db = Draw(records, 100000, 2);
  double positive = 0.0;
  double pos_mean = 0.0;
  for (const Record& r : db) {
    ASSERT_EQ(r.size(), 4u);
    for (int j = 0; j < 3; ++j) {
      ASSERT_GE(r[j], 0.0);
      ASSERT_LE(r[j], 1.0);
    }
    ASSERT_TRUE(r[3] == 1.0 || r[3] == -1.0);
    if (r[3] > 0) {
      positive += 1.0;
      pos_mean += r[0];
    }
  }
  EXPECT_NEAR(positive / db.size(), 0.5, 0.01);
  EXPECT_NEAR(pos_mean / positive, 0.2, 0.01);
}

TEST(GeneratorTest, MixtureMassInUpperBand) {
  GaussianMixtureRecords records;
  const auto db = Draw(records, 100000, 3);
  double inside = 0.0;
  for (const Record& r : db) {
    ASSERT_GE(r[0], 0.0);
    ASSERT_LE(r[0], 1.0);
    if (r[0] >= 0.7 && r[0] <= 0.8) inside += 1.0;
  }
  auto band = [](double mean, double var) {
    const double sd = std::sqrt(var);
    return oracle::NormalCdf((0.8 - mean) / sd) - oracle::NormalCdf((0.7 - mean) / sd);
  };
  const double expected = 0.4 * band(0.5, 0.02) + 0.6 * band(0.75, 0.005);
  EXPECT_NEAR(inside / db.size(), expected, 0.01);
}

TEST(GeneratorTest, SpecParsing) {
  EXPECT_NE(MakeRecordSampler("exp:2.5"), nullptr);
  EXPECT_NE(MakeRecordSampler("uniform:3"), nullptr);
  EXPECT_NE(MakeRecordSampler("twogauss:4"), nullptr);
  EXPECT_NE(MakeRecordSampler("mixture"), nullptr);
  for (const char* bad : {"exp", "uniform:0", "twogauss:x", "normal:1", ""}) {
    EXPECT_THROW(MakeRecordSampler(bad), Error) << bad;
  }
  EXPECT_EQ(CodeOf([] { MakeRecordSampler("exp:-1"); }), ErrorCode::kDomain);
}

// ------------------------------------------------------------- datasets

TEST(DatasetTest, CsvRoundTrip) {
  TwoGaussiansRecords records(2);
  const auto db = Draw(records, 50, 4);
  EXPECT_EQ(ParseDataset(FormatDataset(db)), db);
  const std::string path = ::testing::TempDir() + "/dataset_roundtrip.csv";
  WriteDataset(db, path);
  EXPECT_EQ(ReadDataset(path), db);
}

TEST(DatasetTest, ParsingRules) {
  EXPECT_EQ(ParseDataset("# header\n1,2\n\n3.5,-4e-3\n"),
            (std::vector<Record>{{1, 2}, {3.5, -4e-3}}));
  EXPECT_EQ(CodeOf([] { ParseDataset("1,2\n3\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseDataset("1,abc\n"); }), ErrorCode::kParse);
  EXPECT_EQ(CodeOf([] { ParseDataset("1;2\n"); }), ErrorCode::kParse);
}

TEST(DatasetTest, DrawIsReproducible) {
  UniformCubeRecords records(2);
  EXPECT_EQ(DrawDatabase(records, 10, 5, 1), DrawDatabase(records, 10, 5, 1));
  EXPECT_NE(DrawDatabase(records, 10, 5, 1), DrawDatabase(records, 10, 5, 2));
}

// -------------------------------------------------------- extern target

std::string WriteScript(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + "/" + name;
  std::ofstream(path) << "#!/bin/sh\n" << body;
  std::filesystem::permissions(path, std::filesystem::perms::owner_all);
  return path;
}

TEST(ExternTargetTest, ComputesMeanThroughProgram) {
  const std::string script = WriteScript(
      "mean.sh", "awk -F, '{s += $1} END {printf \"%.17g %d\\n\", s / NR, NR}'\n");
  ExternTarget target(script, 20, OutputNorm::kL1, 2);
  EXPECT_EQ(target.label(), "extern:" + script);
  ExponentialRecords records(1.0);
  const auto db = Draw(records, 20, 6);
  const std::vector<double> out = target.Evaluate(db);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_NEAR(out[0], MeanTarget(1, 20).Evaluate(db)[0], 1e-12);
  EXPECT_EQ(out[1], 20.0);

  const SensitivitySample s = SampleSensitivity(target, records, 16, 3, {4});
  const SensitivitySample direct = SampleSensitivity(MeanTarget(1, 20), records, 16, 3);
  for (int i = 0; i < 16; ++i) EXPECT_NEAR(s.values[i], direct.values[i], 1e-12);
}

TEST(ExternTargetTest, NonDeterministicProgramRejected) {
  const std::string script = WriteScript(
      "random.sh", "cat > /dev/null\nod -An -N4 -tu4 /dev/urandom\n");
  ExternTarget target(script, 3, OutputNorm::kL2);
  EXPECT_EQ(CodeOf([&] {
              target.Evaluate(std::vector<Record>{{1}, {2}, {3}});
            }),
            ErrorCode::kTargetEvaluation);
}

TEST(ExternTargetTest, FailingProgramsReported) {
  const std::string failing = WriteScript("fail.sh", "cat > /dev/null\nexit 3\n");
  EXPECT_EQ(CodeOf([&] {
              ExternTarget(failing, 1, OutputNorm::kL2).Evaluate(std::vector<Record>{{1}});
            }),
            ErrorCode::kTargetEvaluation);
  const std::string garbage = WriteScript("garbage.sh", "cat > /dev/null\necho hello\n");
  EXPECT_EQ(CodeOf([&] {
              ExternTarget(garbage, 1, OutputNorm::kL2).Evaluate(std::vector<Record>{{1}});
            }),
            ErrorCode::kTargetEvaluation);
  const std::string early = WriteScript("early.sh", "echo 1\n");
  ExternTarget early_target(early, 5000, OutputNorm::kL2);
  EXPECT_EQ(early_target.Evaluate(std::vector<Record>(5000, Record{1.0})),
            std::vector<double>{1.0});
  EXPECT_EQ(CodeOf([] { ExternTarget("/nonexistent/program", 1, OutputNorm::kL2); }),
            ErrorCode::kIo);
}

}  // namespace
}  // namespace sensikit
