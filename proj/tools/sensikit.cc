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

// sensikit: command-line front end for planning, sensitivity sampling,
// private release, coverage checks and the bundled experiments.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sensikit/dataset.h"
#include "sensikit/error.h"
#include "sensikit/experiments.h"
#include "sensikit/extern_target.h"
#include "sensikit/generators.h"
#include "sensikit/mechanisms.h"
#include "sensikit/numerics.h"
#include "sensikit/planner.h"
#include "sensikit/rng.h"
#include "sensikit/sampler.h"
#include "sensikit/svm.h"
#include "sensikit/targets.h"
#include "sensikit/text_io.h"

namespace sensikit {
namespace {

using nlohmann::json;

constexpr int kUsageExit = 2;
constexpr char kPlanFormat[] = "sensikit-plan v1";
constexpr std::uint64_t kCliNoiseTag = 0x636c696e6f697365;  // "clinoise"

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out;
};

std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("SENSIKIT_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t value = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParse,
                std::string("SENSIKIT_SEED is not an unsigned integer: ") + env);
  }
  return value;
}

void Emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    WriteTextFile(out, text);
  }
}

json PlanJson(const SamplingPlan& plan) {
  return json{{"format", kPlanFormat},
              {"objective", PlanObjectiveName(plan.objective)},
              {"rho", plan.rho},
              {"m", plan.m},
              {"k", plan.k},
              {"gamma", plan.gamma},
              {"dkw_deviation", DkwDeviation(plan.m, plan.rho)}};
}

SamplingPlan ReadPlanFile(const std::string& path) {
  json j;
  try {
    j = json::parse(ReadTextFile(path));
    if (j.at("format").get<std::string>() != kPlanFormat) {
      throw Error(ErrorCode::kParse, path + ": not a sensikit plan file");
    }
    SamplingPlan plan;
    plan.rho = j.at("rho").get<double>();
    plan.m = j.at("m").get<std::int64_t>();
    plan.k = j.at("k").get<std::int64_t>();
    plan.gamma = j.at("gamma").get<double>();
    const auto objective =
        ParsePlanObjective(j.at("objective").get<std::string>());
    plan.objective = objective.value_or(PlanObjective::kManual);
    const PlanVerdict verdict = ValidatePlan(plan);
    if (!verdict.valid) {
      throw Error(ErrorCode::kDomain, path + ": " + verdict.message);
    }
    return plan;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

int ProbeRecordSize(const RecordSampler& sampler) {
  Rng probe(0, 0);
  return static_cast<int>(sampler.Draw(probe).size());
}

std::unique_ptr<TargetFunction> MakeTarget(const std::string& name,
                                           int record_size, bool unit_cube,
                                           int n, const std::string& norm) {
  if (n < 1) throw Error(ErrorCode::kDomain, "--n must be >= 1");
  if (name == "mean") {
    return std::make_unique<MeanTarget>(record_size, n, unit_cube);
  }
  if (name == "svm") {
    if (record_size < 2) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "svm target needs labelled records (features then label)");
    }
    SvmConfig config;
    config.d = record_size - 1;
    return std::make_unique<SvmTarget>(config, n);
  }
  if (name == "kde") {
    if (record_size != 1) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "kde target needs scalar records");
    }
    return std::make_unique<KdeTarget>(KdeConfig{}, n);
  }
  const std::string prefix = "extern:";
  if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
    const auto parsed = ParseOutputNorm(norm);
    if (!parsed) throw Error(ErrorCode::kParse, "unknown --norm: " + norm);
    return std::make_unique<ExternTarget>(name.substr(prefix.size()), n,
                                          *parsed);
  }
  throw Error(ErrorCode::kParse,
              "unknown --target '" + name +
                  "' (expected mean, svm, kde or extern:<path>)");
}

struct TargetFlags {
  std::string target = "mean";
  std::string dist = "exp:1";
  std::string norm = "l2";
  int n = 1000;
};

void AddTargetFlags(CLI::App* cmd, TargetFlags& flags) {
  cmd->add_option("--target", flags.target,
                  "mean, svm, kde or extern:<path>")
      ->capture_default_str();
  cmd->add_option("--dist", flags.dist,
                  "exp:<rate>, uniform:<d>, twogauss:<d> or mixture")
      ->capture_default_str();
  cmd->add_option("--n", flags.n, "database size")->capture_default_str();
  cmd->add_option("--norm", flags.norm,
                  "output norm for extern targets: l1, l2, linf, lattice_sup")
      ->capture_default_str();
}

// ---------------------------------------------------------------- plan

struct PlanFlags {
  std::string objective = "min-m";
  std::optional<double> gamma;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> k;
  std::optional<double> rho;
  std::string out;
};

int RunPlan(const PlanFlags& f) {
  const auto objective = ParsePlanObjective(f.objective);
  if (!objective) {
    throw Error(ErrorCode::kParse, "unknown --objective: " + f.objective);
  }
  auto need = [&](bool present, const char* flag) {
    if (!present) {
      throw Error(ErrorCode::kDomain, std::string("--objective ") + f.objective +
                                          " requires " + flag);
    }
  };
  SamplingPlan plan;
  switch (*objective) {
    case PlanObjective::kMinM:
      need(f.gamma.has_value(), "--gamma");
      plan = PlanMinM(*f.gamma);
      break;
    case PlanObjective::kMinK:
      need(f.gamma.has_value(), "--gamma");
      need(f.m.has_value(), "--m");
      plan = PlanMinK(*f.m, *f.gamma);
      break;
    case PlanObjective::kMinGamma:
      need(f.m.has_value(), "--m");
      plan = PlanMinGamma(*f.m);
      break;
    case PlanObjective::kManual: {
      need(f.gamma && f.m && f.k && f.rho, "--gamma, --m, --k and --rho");
      plan = SamplingPlan{*f.rho, *f.m, *f.k, *f.gamma, PlanObjective::kManual};
      const PlanVerdict verdict = ValidatePlan(plan);
      if (!verdict.valid) throw Error(ErrorCode::kDomain, verdict.message);
      break;
    }
  }
  Emit(PlanJson(plan).dump(2) + "\n", f.out);
  return 0;
}

// -------------------------------------------------------------- sample

struct SampleFlags {
  TargetFlags target;
  std::optional<std::int64_t> m;
  std::string plan_file;
  CommonFlags common;
};

int RunSample(const SampleFlags& f) {
  std::optional<SamplingPlan> plan;
  if (!f.plan_file.empty()) plan = ReadPlanFile(f.plan_file);
  const std::int64_t m = f.m ? *f.m : plan ? plan->m : 0;
  if (m < 1) throw Error(ErrorCode::kDomain, "--m (or --plan-file) must give m >= 1");
  const auto sampler = MakeRecordSampler(f.target.dist);
  const auto target =
      MakeTarget(f.target.target, ProbeRecordSize(*sampler),
                 f.target.dist.rfind("uniform:", 0) == 0, f.target.n, f.target.norm);
  const std::uint64_t seed = ResolveSeed(f.common.seed);
  const SensitivitySample sample =
      SampleSensitivity(*target, *sampler, m, seed, {f.common.threads});
  if (f.common.out.empty()) {
    std::cout << SerializeSample(sample);
    return 0;
  }
  WriteSampleFile(sample, f.common.out);
  json summary{{"file", f.common.out},
               {"m", sample.m()},
               {"n", sample.n},
               {"norm", OutputNormName(sample.norm)},
               {"seed", sample.master_seed},
               {"target", sample.target_label},
               {"max", sample.values.back()}};
  if (plan && plan->k <= sample.m()) {
    summary["k"] = plan->k;
    summary["delta_hat"] = EstimateDelta(sample, plan->k);
  }
  std::cout << summary.dump(2) << "\n";
  return 0;
}

// ------------------------------------------------ shared delta-hat lookup

struct DeltaHatFlags {
  std::optional<double> delta_hat;
  std::string sample_file;
  std::string plan_file;
  std::optional<std::int64_t> k;
  std::optional<double> gamma;
};

void AddDeltaHatFlags(CLI::App* cmd, DeltaHatFlags& flags) {
  cmd->add_option("--delta-hat", flags.delta_hat,
                  "sensitivity to use directly");
  cmd->add_option("--sample-file", flags.sample_file,
                  "sensitivity sample written by 'sample --out'");
  cmd->add_option("--plan-file", flags.plan_file,
                  "plan written by 'plan --out' (supplies k and gamma)");
  cmd->add_option("--k", flags.k, "order statistic to use from the sample");
  cmd->add_option("--gamma", flags.gamma, "confidence recorded with the result");
}

struct ResolvedDelta {
  double delta_hat = 0.0;
  std::optional<double> gamma;
};

ResolvedDelta ResolveDeltaHat(const DeltaHatFlags& f) {
  ResolvedDelta r;
  r.gamma = f.gamma;
  std::optional<SamplingPlan> plan;
  if (!f.plan_file.empty()) {
    plan = ReadPlanFile(f.plan_file);
    if (!r.gamma) r.gamma = plan->gamma;
  }
  if (f.delta_hat) {
    if (!(*f.delta_hat >= 0.0) || !std::isfinite(*f.delta_hat)) {
      throw Error(ErrorCode::kDomain, "--delta-hat must be finite and >= 0");
    }
    r.delta_hat = *f.delta_hat;
    return r;
  }
  if (f.sample_file.empty()) {
    throw Error(ErrorCode::kDomain,
                "give --delta-hat, or --sample-file with --k or --plan-file");
  }
  const SensitivitySample sample = ReadSampleFile(f.sample_file);
  const std::int64_t k = f.k ? *f.k : plan ? plan->k : 0;
  if (k == 0) {
    throw Error(ErrorCode::kDomain, "--sample-file needs --k or --plan-file");
  }
  r.delta_hat = EstimateDelta(sample, k);
  return r;
}

// ------------------------------------------------------------- release

struct ReleaseFlags {
  std::string mechanism = "laplace";
  double epsilon = 1.0;
  double dp_delta = 0.0;
  int order = 1;
  int lattice_dims = 1;
  bool allow_degenerate = false;
  DeltaHatFlags delta;
  std::string values;
  std::string data;
  TargetFlags target;
  CommonFlags common;
};

std::vector<double> ParseValueList(const std::string& text) {
  std::vector<double> values;
  for (std::string_view field : SplitString(text, ',')) {
    values.push_back(ParseDouble(TrimWhitespace(field)));
  }
  return values;
}

int RunRelease(const ReleaseFlags& f) {
  const auto kind = ParseMechanism(f.mechanism);
  if (!kind) throw Error(ErrorCode::kParse, "unknown --mechanism: " + f.mechanism);
  const ResolvedDelta delta = ResolveDeltaHat(f.delta);
  if (delta.delta_hat == 0.0 && !f.allow_degenerate) {
    throw Error(ErrorCode::kDegenerateSensitivity,
                "sampled sensitivity is zero; no noise would be added. Pass "
                "--allow-degenerate to release the exact value without a "
                "privacy guarantee");
  }
  std::vector<double> output;
  if (!f.values.empty()) {
    output = ParseValueList(f.values);
  } else if (!f.data.empty()) {
    const std::vector<Record> database = ReadDataset(f.data);
    if (database.empty()) throw Error(ErrorCode::kDomain, f.data + ": no records");
    const auto target = MakeTarget(f.target.target,
                                   static_cast<int>(database.front().size()),
                                   false, static_cast<int>(database.size()),
                                   f.target.norm);
    output = target->Evaluate(database);
  } else {
    throw Error(ErrorCode::kDomain,
                "give the value to release with --values or --data");
  }
  MechanismSpec spec;
  spec.kind = *kind;
  spec.epsilon = f.epsilon;
  spec.dp_delta = f.dp_delta;
  spec.bernstein_dims = f.lattice_dims;
  spec.bernstein_order = f.order;
  spec.allow_degenerate = f.allow_degenerate;
  Rng rng(DeriveSeed(ResolveSeed(f.common.seed), kCliNoiseTag), 0);
  Release release = Respond(output, delta.delta_hat, spec, rng);
  release.gamma = delta.gamma;
  Emit(SerializeRelease(release), f.common.out);
  return 0;
}

// -------------------------------------------------------------- verify

struct VerifyFlags {
  TargetFlags target;
  DeltaHatFlags delta;
  std::int64_t trials = 10000;
  CommonFlags common;
};

int RunVerify(const VerifyFlags& f) {
  const ResolvedDelta delta = ResolveDeltaHat(f.delta);
  const auto sampler = MakeRecordSampler(f.target.dist);
  const auto target =
      MakeTarget(f.target.target, ProbeRecordSize(*sampler),
                 f.target.dist.rfind("uniform:", 0) == 0, f.target.n, f.target.norm);
  const std::uint64_t seed = ResolveSeed(f.common.seed);
  const double coverage = VerifyRdpCoverage(*target, *sampler, delta.delta_hat,
                                            f.trials, seed, {f.common.threads});
  json result{{"delta_hat", delta.delta_hat},
              {"trials", f.trials},
              {"seed", seed},
              {"coverage", coverage}};
  if (delta.gamma) {
    result["gamma"] = *delta.gamma;
    result["meets_confidence"] = coverage >= 1.0 - *delta.gamma;
  }
  Emit(result.dump(2) + "\n", f.common.out);
  return 0;
}

// ---------------------------------------------------------- experiment

struct ExperimentFlags {
  std::string name;
  bool large_scale = false;
  std::vector<double> gammas;
  std::vector<double> epsilons;
  std::vector<int> dims;
  std::vector<std::int64_t> ms;
  std::vector<int> orders;
  std::optional<int> n;
  std::optional<int> repeats;
  CommonFlags common;
};

int RunExperimentCommand(const ExperimentFlags& f) {
  const auto kind = ParseExperiment(f.name);
  if (!kind) throw Error(ErrorCode::kParse, "unknown experiment: " + f.name);
  ExperimentConfig config = DefaultExperimentConfig(*kind, f.large_scale);
  if (!f.gammas.empty()) config.gammas = f.gammas;
  if (!f.epsilons.empty()) config.epsilons = f.epsilons;
  if (!f.dims.empty()) config.dims = f.dims;
  if (!f.ms.empty()) config.ms = f.ms;
  if (!f.orders.empty()) config.orders = f.orders;
  if (f.n) config.n = *f.n;
  if (f.repeats) config.repeats = *f.repeats;
  config.master_seed = ResolveSeed(f.common.seed);
  config.threads = f.common.threads;
  Emit(RunExperiment(config).ToCsv(), f.common.out);
  return 0;
}

void AddCommonFlags(CLI::App* cmd, CommonFlags& flags, bool threads = true) {
  cmd->add_option("--seed", flags.seed,
                  "master seed (falls back to $SENSIKIT_SEED, then 0)");
  if (threads) {
    cmd->add_option("--threads", flags.threads,
                    "worker threads (< 1 uses all cores)")
        ->capture_default_str();
  }
  cmd->add_option("--out", flags.out, "output file instead of stdout");
}

int ReportError(const Error& e, const json& extra = json::object()) {
  json report{{"error", ErrorCodeName(e.code())}, {"message", e.what()}};
  report.update(extra);
  std::cerr << report.dump(2) << "\n";
  return static_cast<int>(e.code());
}

int Main(int argc, char** argv) {
  CLI::App app{"sensikit: sampled-sensitivity differential privacy toolkit"};
  app.require_subcommand(1);

  PlanFlags plan;
  CLI::App* plan_cmd = app.add_subcommand("plan", "choose sampler parameters");
  plan_cmd->add_option("--objective", plan.objective,
                       "min-m, min-k, min-gamma or manual")
      ->capture_default_str();
  plan_cmd->add_option("--gamma", plan.gamma, "target confidence");
  plan_cmd->add_option("--m", plan.m, "sample size");
  plan_cmd->add_option("--k", plan.k, "order statistic (manual)");
  plan_cmd->add_option("--rho", plan.rho, "CDF confidence (manual)");
  plan_cmd->add_option("--out", plan.out, "output file instead of stdout");

  SampleFlags sample;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "measure sensitivities of a target");
  AddTargetFlags(sample_cmd, sample.target);
  sample_cmd->add_option("--m", sample.m, "number of measurements");
  sample_cmd->add_option("--plan-file", sample.plan_file, "take m from a plan");
  AddCommonFlags(sample_cmd, sample.common);

  ReleaseFlags release;
  CLI::App* release_cmd =
      app.add_subcommand("release", "privatize a value at sampled sensitivity");
  release_cmd->add_option("--mechanism", release.mechanism,
                          "laplace, gaussian, exponential or bernstein")
      ->capture_default_str();
  release_cmd->add_option("--epsilon", release.epsilon)->capture_default_str();
  release_cmd->add_option("--delta", release.dp_delta, "Gaussian mechanism delta")
      ->capture_default_str();
  release_cmd->add_option("--order", release.order, "iterated Bernstein order")
      ->capture_default_str();
  release_cmd->add_option("--lattice-dims", release.lattice_dims,
                          "Bernstein input dimension")
      ->capture_default_str();
  release_cmd->add_flag("--allow-degenerate", release.allow_degenerate,
                        "release exactly when the sensitivity is zero");
  release_cmd->add_option("--values", release.values,
                          "comma-separated value (or scores, or lattice)");
  release_cmd->add_option("--data", release.data,
                          "CSV database evaluated with --target");
  release_cmd->add_option("--target", release.target.target,
                          "target applied to --data")
      ->capture_default_str();
  release_cmd->add_option("--norm", release.target.norm,
                          "output norm for extern targets")
      ->capture_default_str();
  AddDeltaHatFlags(release_cmd, release.delta);
  AddCommonFlags(release_cmd, release.common, /*threads=*/false);

  VerifyFlags verify;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "estimate how often fresh neighbours stay within delta-hat");
  AddTargetFlags(verify_cmd, verify.target);
  AddDeltaHatFlags(verify_cmd, verify.delta);
  verify_cmd->add_option("--trials", verify.trials)->capture_default_str();
  AddCommonFlags(verify_cmd, verify.common);

  ExperimentFlags experiment;
  CLI::App* experiment_cmd =
      app.add_subcommand("experiment", "run a bundled experiment, CSV output");
  experiment_cmd
      ->add_option("name", experiment.name,
                   "analytic_vs_sampled, bounded_mean, svm_sensitivity, "
                   "svm_utility or kde_utility")
      ->required();
  experiment_cmd->add_flag("--paper-scale", experiment.large_scale,
                           "use the large original settings");
  experiment_cmd->add_option("--gamma", experiment.gammas, "gamma grid")
      ->delimiter(',');
  experiment_cmd->add_option("--epsilon", experiment.epsilons, "epsilon grid")
      ->delimiter(',');
  experiment_cmd->add_option("--d", experiment.dims, "dimension grid")
      ->delimiter(',');
  experiment_cmd->add_option("--m", experiment.ms, "sample-size grid")
      ->delimiter(',');
  experiment_cmd->add_option("--order", experiment.orders,
                             "Bernstein order grid")
      ->delimiter(',');
  experiment_cmd->add_option("--n", experiment.n, "database size");
  experiment_cmd->add_option("--repeats", experiment.repeats, "repetitions");
  AddCommonFlags(experiment_cmd, experiment.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (*plan_cmd) return RunPlan(plan);
    if (*sample_cmd) return RunSample(sample);
    if (*release_cmd) return RunRelease(release);
    if (*verify_cmd) return RunVerify(verify);
    if (*experiment_cmd) return RunExperimentCommand(experiment);
  } catch (const InfeasiblePlanError& e) {
    return ReportError(
        e, {{"min_feasible_gamma", e.min_feasible_gamma()},
            {"hint", "raise --gamma to at least min_feasible_gamma or increase --m"}});
  } catch (const Error& e) {
    return ReportError(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump(2)
              << "\n";
    return 1;
  }
  return kUsageExit;
}

}  // namespace
}  // namespace sensikit

int main(int argc, char** argv) { return sensikit::Main(argc, argv); }
