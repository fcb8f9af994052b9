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

#ifndef SENSIKIT_EXPERIMENTS_H_
#define SENSIKIT_EXPERIMENTS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sensikit {

enum class ExperimentKind {
  kAnalyticVsSampled,  // Exp(1) sample mean: sampled vs analytic RDP sensitivity
  kBoundedMean,        // mean on [0,1]^d: sampled vs global sensitivity
  kSvmSensitivity,     // linear SVM: sampled vs global sensitivity
  kSvmUtility,         // private SVM misclassification vs epsilon
  kKdeUtility,         // Bernstein-released KDE sup-error vs epsilon
};

const char* ExperimentName(ExperimentKind kind);
std::optional<ExperimentKind> ParseExperiment(const std::string& name);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kAnalyticVsSampled;
  std::vector<double> gammas;
  std::vector<double> epsilons;
  std::vector<int> dims;
  // Sampling budgets. Empty means "use the min-m plan for each gamma" in the
  // sensitivity experiments; the utility experiments take the first entry.
  std::vector<std::int64_t> ms;
  std::vector<int> orders;  // Bernstein orders (KDE only)
  int n = 0;
  int repeats = 1;
  std::uint64_t master_seed = 0;
  int threads = 1;
  double svm_C = 3.0;
  int test_size = 1000;        // SVM utility held-out records
  int lattice_size = 10;       // KDE lattice
  double kde_bandwidth = 0.05;
  int eval_grid = 201;         // KDE sup-error evaluation points
};

// Desk-scale defaults, or the larger settings used in the original figures.
ExperimentConfig DefaultExperimentConfig(ExperimentKind kind,
                                         bool large_scale = false);

// Throws Error(kDomain) for empty grids, repeats < 1 and similar.
void ValidateExperimentConfig(const ExperimentConfig& config);

struct CsvTable {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  // "# sensikit-experiment v1, experiment=<name>" then a header row and one
  // row per grid point; comma-separated, LF line endings.
  std::string ToCsv() const;
  std::size_t ColumnIndex(const std::string& name) const;
  double Number(std::size_t row, const std::string& column) const;
};

// Pure function of the config (including master_seed and independent of
// config.threads).
CsvTable RunExperiment(const ExperimentConfig& config);

}  // namespace sensikit

#endif  // SENSIKIT_EXPERIMENTS_H_
