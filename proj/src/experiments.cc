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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "sensikit/dataset.h"
#include "sensikit/error.h"
#include "sensikit/generators.h"
#include "sensikit/mechanisms.h"
#include "sensikit/parallel.h"
#include "sensikit/planner.h"
#include "sensikit/rng.h"
#include "sensikit/sampler.h"
#include "sensikit/svm.h"
#include "sensikit/targets.h"
#include "sensikit/text_io.h"

namespace sensikit {
namespace {

constexpr char kCsvMagic[] = "# sensikit-experiment v1";

std::uint64_t StreamSeed(std::uint64_t master, std::uint64_t a,
                         std::uint64_t b = 0, std::uint64_t c = 0,
                         std::uint64_t d = 0) {
  return DeriveSeed(DeriveSeed(DeriveSeed(DeriveSeed(master, a), b), c), d);
}

std::string Num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return FormatDouble(v);
}

std::string Int(std::int64_t v) { return std::to_string(v); }

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double StdDev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// One plan per gamma: min-m when no budgets are given, otherwise min-k for
// every budget (infeasible combinations are skipped).
std::vector<SamplingPlan> PlansFor(double gamma,
                                   const std::vector<std::int64_t>& ms) {
  if (ms.empty()) return {PlanMinM(gamma)};
  std::vector<SamplingPlan> plans;
  for (std::int64_t m : ms) {
    try {
      plans.push_back(PlanMinK(m, gamma));
    } catch (const InfeasiblePlanError&) {
    }
  }
  return plans;
}

// Samples for `repeats` independent runs at budget m, shared by every gamma
// using that budget.
class SampleCache {
 public:
  SampleCache(const TargetFunction& target, const RecordSampler& sampler,
              std::uint64_t seed, int repeats, int threads)
      : target_(target),
        sampler_(sampler),
        seed_(seed),
        repeats_(repeats),
        threads_(threads) {}

  const std::vector<SensitivitySample>& Get(std::int64_t m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    std::vector<SensitivitySample> samples(repeats_);
    if (repeats_ > 1) {
      ParallelFor(repeats_, threads_, [&](std::int64_t r) {
        samples[r] = SampleSensitivity(target_, sampler_, m,
                                       StreamSeed(seed_, m, r), {1});
      });
    } else {
      samples[0] = SampleSensitivity(target_, sampler_, m, StreamSeed(seed_, m, 0),
                                     {threads_});
    }
    return cache_.emplace(m, std::move(samples)).first->second;
  }

 private:
  const TargetFunction& target_;
  const RecordSampler& sampler_;
  std::uint64_t seed_;
  int repeats_;
  int threads_;
  std::map<std::int64_t, std::vector<SensitivitySample>> cache_;
};

CsvTable AnalyticVsSampled(const ExperimentConfig& config) {
  CsvTable table;
  table.columns = {"gamma", "plan", "m", "k", "delta_analytic",
                   "delta_sampled_mean", "delta_sampled_sd", "step_mean"};
  const double rate = 1.0;
  MeanTarget target(1, config.n);
  ExponentialRecords records(rate);
  SampleCache cache(target, records, StreamSeed(config.master_seed, 1),
                    config.repeats, config.threads);
  for (double gamma : config.gammas) {
    for (const SamplingPlan& plan : PlansFor(gamma, config.ms)) {
      const auto& samples = cache.Get(plan.m);
      std::vector<double> estimates;
      std::vector<double> steps;
      for (const SensitivitySample& s : samples) {
        const double est = EstimateDelta(s, plan.k);
        estimates.push_back(est);
        steps.push_back(plan.k > 1 ? est - EstimateDelta(s, plan.k - 1) : est);
      }
      table.rows.push_back({Num(gamma), PlanObjectiveName(plan.objective),
                            Int(plan.m), Int(plan.k),
                            Num(std::log(1.0 / gamma) / (rate * config.n)),
                            Num(Mean(estimates)), Num(StdDev(estimates)),
                            Num(Mean(steps))});
    }
  }
  return table;
}

CsvTable BoundedMean(const ExperimentConfig& config) {
  CsvTable table;
  table.columns = {"d",          "gamma",          "plan",
                   "m",          "k",              "delta_global",
                   "delta_sampled_mean", "max_measured"};
  for (int d : config.dims) {
    MeanTarget target(d, config.n, /*unit_cube_domain=*/true);
    UniformCubeRecords records(d);
    SampleCache cache(target, records, StreamSeed(config.master_seed, 2, d),
                      config.repeats, config.threads);
    for (double gamma : config.gammas) {
      for (const SamplingPlan& plan : PlansFor(gamma, config.ms)) {
        const auto& samples = cache.Get(plan.m);
        std::vector<double> estimates;
        double max_measured = 0.0;
        for (const SensitivitySample& s : samples) {
          estimates.push_back(EstimateDelta(s, plan.k));
          max_measured = std::max(max_measured, s.values.back());
        }
        table.rows.push_back({Int(d), Num(gamma), PlanObjectiveName(plan.objective),
                              Int(plan.m), Int(plan.k),
                              Num(*target.GlobalSensitivity()),
                              Num(Mean(estimates)), Num(max_measured)});
      }
    }
  }
  return table;
}

CsvTable SvmSensitivity(const ExperimentConfig& config) {
  CsvTable table;
  table.columns = {"d", "gamma", "plan", "m", "k", "delta_hat_mean",
                   "delta_hat_max", "delta_global", "global_over_hat"};
  for (int d : config.dims) {
    SvmConfig svm;
    svm.C = config.svm_C;
    svm.d = d;
    SvmTarget target(svm, config.n);
    TwoGaussiansRecords records(d);
    SampleCache cache(target, records, StreamSeed(config.master_seed, 3, d),
                      config.repeats, config.threads);
    const double global = *target.GlobalSensitivity();
    for (double gamma : config.gammas) {
      for (const SamplingPlan& plan : PlansFor(gamma, config.ms)) {
        const auto& samples = cache.Get(plan.m);
        std::vector<double> estimates;
        for (const SensitivitySample& s : samples) {
          estimates.push_back(EstimateDelta(s, plan.k));
        }
        const double worst = *std::max_element(estimates.begin(), estimates.end());
        table.rows.push_back(
            {Int(d), Num(gamma), PlanObjectiveName(plan.objective), Int(plan.m),
             Int(plan.k), Num(Mean(estimates)), Num(worst), Num(global),
             Num(worst > 0.0 ? global / worst
                             : std::numeric_limits<double>::infinity())});
      }
    }
  }
  return table;
}

SamplingPlan UtilityPlan(const ExperimentConfig& config, double gamma) {
  if (config.ms.empty()) return PlanMinM(gamma);
  return PlanMinK(config.ms.front(), gamma);
}

CsvTable SvmUtility(const ExperimentConfig& config) {
  CsvTable table;
  table.columns = {"epsilon",      "gamma",          "m",
                   "k",            "delta_hat",      "delta_global",
                   "error_nonprivate", "error_sampled", "error_global"};
  const int d = config.dims.front();
  const double gamma = config.gammas.front();
  SvmConfig svm;
  svm.C = config.svm_C;
  svm.d = d;
  SvmTarget target(svm, config.n);
  TwoGaussiansRecords records(d);
  const SamplingPlan plan = UtilityPlan(config, gamma);
  const SensitivitySample sample = SampleSensitivity(
      target, records, plan.m, StreamSeed(config.master_seed, 4, 0),
      {config.threads});
  const double delta_hat = EstimateDelta(sample, plan.k);
  const double delta_global = *target.GlobalSensitivity();

  const std::size_t n_eps = config.epsilons.size();
  std::vector<double> nonprivate(config.repeats);
  std::vector<std::vector<double>> err_hat(config.repeats, std::vector<double>(n_eps));
  std::vector<std::vector<double>> err_bar(config.repeats, std::vector<double>(n_eps));
  ParallelFor(config.repeats, config.threads, [&](std::int64_t r) {
    const auto train = DrawDatabase(records, config.n, StreamSeed(config.master_seed, 4, 1, r));
    const auto test =
        DrawDatabase(records, config.test_size, StreamSeed(config.master_seed, 4, 2, r));
    const SvmModel model = SvmTrain(train, svm);
    nonprivate[r] = SvmMisclassification(test, model.w, model.b);
    for (std::size_t e = 0; e < n_eps; ++e) {
      // Common unit-scale noise for both sensitivities.
      Rng rng(StreamSeed(config.master_seed, 4, 3, r), e);
      std::vector<double> unit(d + 1);
      for (double& u : unit) u = SampleLaplace(rng, 1.0);
      auto error_at = [&](double delta) {
        const double scale = delta / config.epsilons[e];
        std::vector<double> w(model.w);
        for (int j = 0; j < d; ++j) w[j] += scale * unit[j];
        return SvmMisclassification(test, w, model.b + scale * unit[d]);
      };
      err_hat[r][e] = error_at(delta_hat);
      err_bar[r][e] = error_at(delta_global);
    }
  });
  for (std::size_t e = 0; e < n_eps; ++e) {
    std::vector<double> h;
    std::vector<double> g;
    for (int r = 0; r < config.repeats; ++r) {
      h.push_back(err_hat[r][e]);
      g.push_back(err_bar[r][e]);
    }
    table.rows.push_back({Num(config.epsilons[e]), Num(gamma), Int(plan.m),
                          Int(plan.k), Num(delta_hat), Num(delta_global),
                          Num(Mean(nonprivate)), Num(Mean(h)), Num(Mean(g))});
  }
  return table;
}

CsvTable KdeUtility(const ExperimentConfig& config) {
  CsvTable table;
  table.columns = {"gamma",     "order",        "epsilon",      "m",
                   "k",         "delta_hat",    "delta_global", "error_sampled",
                   "error_global", "approx_error"};
  KdeConfig kde{config.kde_bandwidth, config.lattice_size};
  KdeTarget target(kde, config.n);
  GaussianMixtureRecords records;
  const int k = config.lattice_size;
  const double delta_global = *target.GlobalSensitivity();

  const std::int64_t m = config.ms.empty() ? PlanMinM(config.gammas.front()).m
                                           : config.ms.front();
  std::vector<SamplingPlan> plans;
  for (double gamma : config.gammas) {
    plans.push_back(config.ms.empty() ? PlanMinM(gamma) : PlanMinK(m, gamma));
  }
  std::map<std::int64_t, SensitivitySample> samples;
  std::vector<double> delta_hats;
  for (const SamplingPlan& plan : plans) {
    auto it = samples.find(plan.m);
    if (it == samples.end()) {
      it = samples
               .emplace(plan.m, SampleSensitivity(target, records, plan.m,
                                                  StreamSeed(config.master_seed, 5, 0, plan.m),
                                                  {config.threads}))
               .first;
    }
    delta_hats.push_back(EstimateDelta(it->second, plan.k));
  }

  std::vector<double> grid(config.eval_grid);
  for (int g = 0; g < config.eval_grid; ++g) {
    grid[g] = static_cast<double>(g) / (config.eval_grid - 1);
  }
  const std::size_t n_orders = config.orders.size();
  const std::size_t n_eps = config.epsilons.size();
  const std::size_t n_gamma = plans.size();
  // [repeat][order] approximation error; [repeat][order][gamma][eps] errors.
  std::vector<std::vector<double>> approx(config.repeats, std::vector<double>(n_orders));
  std::vector<std::vector<double>> err_hat(
      config.repeats, std::vector<double>(n_orders * n_gamma * n_eps));
  std::vector<std::vector<double>> err_bar = err_hat;

  ParallelFor(config.repeats, config.threads, [&](std::int64_t r) {
    const auto database =
        DrawDatabase(records, config.n, StreamSeed(config.master_seed, 5, 1, r));
    const std::vector<double> lattice = target.Evaluate(database);
    std::vector<double> truth(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
      truth[g] = KdeDensity(database, kde.bandwidth, grid[g]);
    }
    for (std::size_t e = 0; e < n_eps; ++e) {
      Rng rng(StreamSeed(config.master_seed, 5, 2, r), e);
      std::vector<double> unit(k + 1);
      for (double& u : unit) u = SampleLaplace(rng, 1.0);
      for (std::size_t o = 0; o < n_orders; ++o) {
        const BernsteinFunction clean({lattice, k, 1, config.orders[o]});
        const BernsteinFunction noise({unit, k, 1, config.orders[o]});
        std::vector<double> bias(grid.size());
        std::vector<double> wiggle(grid.size());
        double approx_error = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
          const double y[1] = {grid[g]};
          bias[g] = clean(y) - truth[g];
          wiggle[g] = noise(y);
          approx_error = std::max(approx_error, std::abs(bias[g]));
        }
        approx[r][o] = approx_error;
        auto sup_error = [&](double delta) {
          const double scale =
              BernsteinNoiseScale(delta, k, 1, config.epsilons[e]);
          // Antithetic pair: the noise u and its mirror -u.
          double plus = 0.0;
          double minus = 0.0;
          for (std::size_t g = 0; g < grid.size(); ++g) {
            plus = std::max(plus, std::abs(bias[g] + scale * wiggle[g]));
            minus = std::max(minus, std::abs(bias[g] - scale * wiggle[g]));
          }
          return 0.5 * (plus + minus);
        };
        const double global_error = sup_error(delta_global);
        for (std::size_t gi = 0; gi < n_gamma; ++gi) {
          const std::size_t slot = (o * n_gamma + gi) * n_eps + e;
          err_hat[r][slot] = sup_error(delta_hats[gi]);
          err_bar[r][slot] = global_error;
        }
      }
    }
  });

  for (std::size_t gi = 0; gi < n_gamma; ++gi) {
    for (std::size_t o = 0; o < n_orders; ++o) {
      std::vector<double> a;
      for (int r = 0; r < config.repeats; ++r) a.push_back(approx[r][o]);
      for (std::size_t e = 0; e < n_eps; ++e) {
        const std::size_t slot = (o * n_gamma + gi) * n_eps + e;
        std::vector<double> h;
        std::vector<double> g;
        for (int r = 0; r < config.repeats; ++r) {
          h.push_back(err_hat[r][slot]);
          g.push_back(err_bar[r][slot]);
        }
        table.rows.push_back({Num(plans[gi].gamma), Int(config.orders[o]),
                              Num(config.epsilons[e]), Int(plans[gi].m),
                              Int(plans[gi].k), Num(delta_hats[gi]),
                              Num(delta_global), Num(Mean(h)), Num(Mean(g)),
                              Num(Mean(a))});
      }
    }
  }
  return table;
}

}  // namespace

const char* ExperimentName(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kAnalyticVsSampled:
      return "analytic_vs_sampled";
    case ExperimentKind::kBoundedMean:
      return "bounded_mean";
    case ExperimentKind::kSvmSensitivity:
      return "svm_sensitivity";
    case ExperimentKind::kSvmUtility:
      return "svm_utility";
    case ExperimentKind::kKdeUtility:
      return "kde_utility";
  }
  return "analytic_vs_sampled";
}

std::optional<ExperimentKind> ParseExperiment(const std::string& name) {
  for (ExperimentKind kind :
       {ExperimentKind::kAnalyticVsSampled, ExperimentKind::kBoundedMean,
        ExperimentKind::kSvmSensitivity, ExperimentKind::kSvmUtility,
        ExperimentKind::kKdeUtility}) {
    if (name == ExperimentName(kind)) return kind;
  }
  return std::nullopt;
}

ExperimentConfig DefaultExperimentConfig(ExperimentKind kind, bool large_scale) {
  ExperimentConfig c;
  c.experiment = kind;
  switch (kind) {
    case ExperimentKind::kAnalyticVsSampled:
      c.gammas = {0.05, 0.1, 0.2, 0.3};
      c.n = 1000;
      c.repeats = 50;
      break;
    case ExperimentKind::kBoundedMean:
      c.gammas = {0.05, 0.1, 0.2, 0.3};
      c.dims = {1};
      c.n = 500;
      c.repeats = large_scale ? 50 : 10;
      break;
    case ExperimentKind::kSvmSensitivity:
      c.gammas = {0.05, 0.1, 0.2, 0.3};
      c.dims = large_scale ? std::vector<int>{8, 16, 32, 64} : std::vector<int>{2, 4, 8};
      c.ms = {1500};
      c.n = large_scale ? 1000 : 200;
      c.repeats = 1;
      break;
    case ExperimentKind::kSvmUtility:
      c.gammas = {0.05};
      c.epsilons = {0.1, 0.3, 1, 3, 10};
      c.dims = {2};
      c.ms = {1500};
      c.n = large_scale ? 1000 : 200;
      c.repeats = large_scale ? 500 : 100;
      break;
    case ExperimentKind::kKdeUtility:
      c.gammas = {0.05, 0.1};
      c.epsilons = {0.1, 0.3, 1, 3, 10, 100};
      c.ms = {large_scale ? 50000 : 5000};
      c.orders = {1, 3};
      c.n = large_scale ? 5000 : 1000;
      c.repeats = large_scale ? 1000 : 100;
      break;
  }
  return c;
}

void ValidateExperimentConfig(const ExperimentConfig& config) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kDomain,
                std::string("experiment ") + ExperimentName(config.experiment) +
                    ": " + what);
  };
  if (config.repeats < 1) fail("repeats must be >= 1");
  if (config.n < 1) fail("n must be >= 1");
  if (config.gammas.empty()) fail("gamma grid is empty");
  for (double g : config.gammas) {
    if (!(g > 0.0 && g < 1.0)) fail("gamma values must lie in (0, 1)");
  }
  for (std::int64_t m : config.ms) {
    if (m < 1) fail("m values must be >= 1");
  }
  const bool needs_dims = config.experiment == ExperimentKind::kBoundedMean ||
                          config.experiment == ExperimentKind::kSvmSensitivity ||
                          config.experiment == ExperimentKind::kSvmUtility;
  if (needs_dims && config.dims.empty()) fail("dimension grid is empty");
  for (int d : config.dims) {
    if (d < 1) fail("dimensions must be >= 1");
  }
  const bool needs_eps = config.experiment == ExperimentKind::kSvmUtility ||
                         config.experiment == ExperimentKind::kKdeUtility;
  if (needs_eps && config.epsilons.empty()) fail("epsilon grid is empty");
  for (double e : config.epsilons) {
    if (!(e > 0.0)) fail("epsilon values must be > 0");
  }
  if (config.experiment == ExperimentKind::kKdeUtility) {
    if (config.orders.empty()) fail("Bernstein order grid is empty");
    for (int h : config.orders) {
      if (h < 1) fail("Bernstein orders must be >= 1");
    }
    if (config.lattice_size < 1 || config.eval_grid < 2 ||
        !(config.kde_bandwidth > 0.0)) {
      fail("invalid KDE settings");
    }
  }
  if (config.experiment == ExperimentKind::kSvmUtility && config.test_size < 1) {
    fail("test_size must be >= 1");
  }
}

std::string CsvTable::ToCsv() const {
  std::string out = std::string(kCsvMagic) + ", experiment=" + experiment + "\n";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c > 0) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

std::size_t CsvTable::ColumnIndex(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw Error(ErrorCode::kIndex, "no column '" + name + "' in " + experiment);
  }
  return static_cast<std::size_t>(it - columns.begin());
}

double CsvTable::Number(std::size_t row, const std::string& column) const {
  const std::string& cell = rows.at(row).at(ColumnIndex(column));
  if (cell == "inf") return std::numeric_limits<double>::infinity();
  return ParseDouble(cell);
}

CsvTable RunExperiment(const ExperimentConfig& config) {
  ValidateExperimentConfig(config);
  CsvTable table;
  try {
    switch (config.experiment) {
      case ExperimentKind::kAnalyticVsSampled:
        table = AnalyticVsSampled(config);
        break;
      case ExperimentKind::kBoundedMean:
        table = BoundedMean(config);
        break;
      case ExperimentKind::kSvmSensitivity:
        table = SvmSensitivity(config);
        break;
      case ExperimentKind::kSvmUtility:
        table = SvmUtility(config);
        break;
      case ExperimentKind::kKdeUtility:
        table = KdeUtility(config);
        break;
    }
  } catch (const Error& e) {
    throw Error(e.code(), std::string("experiment ") +
                              ExperimentName(config.experiment) + ": " + e.what());
  }
  table.experiment = ExperimentName(config.experiment);
  return table;
}

}  // namespace sensikit
