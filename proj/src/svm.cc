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

#include "sensikit/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sensikit/error.h"
#include "sensikit/text_io.h"

namespace sensikit {
namespace {

constexpr double kTau = 1e-12;

double Dot(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int j = 0; j < d; ++j) s += a[j] * b[j];
  return s;
}

}  // namespace

SvmModel SvmTrain(std::span<const Record> records, const SvmConfig& config) {
  const int n = static_cast<int>(records.size());
  const int d = config.d;
  if (n < 1) throw Error(ErrorCode::kDomain, "SvmTrain: need at least one record");
  if (d < 1 || !(config.C >= 0.0) || !(config.tolerance > 0.0) ||
      config.max_passes < 1) {
    throw Error(ErrorCode::kDomain, "SvmTrain: invalid configuration");
  }

  std::vector<double> x(static_cast<std::size_t>(n) * d);
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    const Record& r = records[i];
    if (static_cast<int>(r.size()) != d + 1) {
      std::ostringstream msg;
      msg << "SvmTrain: record " << i << " has " << r.size()
          << " values, expected d + 1 = " << d + 1;
      throw Error(ErrorCode::kDimensionMismatch, msg.str());
    }
    for (int j = 0; j < d; ++j) {
      if (!std::isfinite(r[j])) {
        throw Error(ErrorCode::kDomain, "SvmTrain: non-finite feature");
      }
      x[static_cast<std::size_t>(i) * d + j] = r[j];
    }
    if (r[d] != 1.0 && r[d] != -1.0) {
      throw Error(ErrorCode::kDomain, "SvmTrain: labels must be -1 or +1");
    }
    y[i] = r[d];
  }

  const double upper = config.C / n;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);  // Q alpha - 1
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = Dot(&x[i * d], &x[i * d], d);

  SvmModel model;
  model.w.assign(d, 0.0);
  std::vector<double> dw(d);
  const std::int64_t max_iterations =
      static_cast<std::int64_t>(config.max_passes) * n;

  for (;;) {
    double g_max = -std::numeric_limits<double>::infinity();
    double g_min = std::numeric_limits<double>::infinity();
    int i = -1;
    int j = -1;
    for (int t = 0; t < n; ++t) {
      const double v = -y[t] * grad[t];
      const bool up = y[t] > 0 ? alpha[t] < upper : alpha[t] > 0.0;
      const bool low = y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < upper;
      if (up && v > g_max) {
        g_max = v;
        i = t;
      }
      if (low && v < g_min) {
        g_min = v;
        j = t;
      }
    }
    model.kkt_violation = (i < 0 || j < 0) ? 0.0 : g_max - g_min;
    if (i < 0 || j < 0 || g_max - g_min <= config.tolerance) {
      model.converged = true;
      break;
    }
    if (model.iterations >= max_iterations) break;
    ++model.iterations;

    const double* xi = &x[i * d];
    const double* xj = &x[j * d];
    const double q_ij = y[i] * y[j] * Dot(xi, xj, d);
    const double old_i = alpha[i];
    const double old_j = alpha[j];
    double& ai = alpha[i];
    double& aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = diag[i] + diag[j] + 2.0 * q_ij;
      if (quad <= 0.0) quad = kTau;
      const double step = (-grad[i] - grad[j]) / quad;
      const double diff = ai - aj;
      ai += step;
      aj += step;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > upper) {
          ai = upper;
          aj = upper - diff;
        }
      } else if (aj > upper) {
        aj = upper;
        ai = upper + diff;
      }
    } else {
      double quad = diag[i] + diag[j] - 2.0 * q_ij;
      if (quad <= 0.0) quad = kTau;
      const double step = (grad[i] - grad[j]) / quad;
      const double sum = ai + aj;
      ai -= step;
      aj += step;
      if (sum > upper) {
        if (ai > upper) {
          ai = upper;
          aj = sum - upper;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > upper) {
        if (aj > upper) {
          aj = upper;
          ai = sum - upper;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }

    const double di = (ai - old_i) * y[i];
    const double dj = (aj - old_j) * y[j];
    for (int c = 0; c < d; ++c) {
      dw[c] = di * xi[c] + dj * xj[c];
      model.w[c] += dw[c];
    }
    for (int t = 0; t < n; ++t) {
      grad[t] += y[t] * Dot(&x[t * d], dw.data(), d);
    }
  }

  // Bias from the KKT conditions.
  int free_count = 0;
  double free_sum = 0.0;
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  bool any_support = false;
  for (int t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] > 0.0) any_support = true;
    if (alpha[t] >= upper) {
      if (y[t] < 0) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else if (alpha[t] <= 0.0) {
      if (y[t] > 0) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else {
      ++free_count;
      free_sum += yg;
    }
  }
  const bool single_class =
      std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
  if (free_count > 0) {
    model.b = -free_sum / free_count;
  } else if (!any_support && single_class) {
    model.b = y[0];
  } else {
    model.b = -0.5 * (ub + lb);
  }
  return model;
}

double SvmPrimalObjective(std::span<const Record> records, double C,
                          std::span<const double> w, double b) {
  const int d = static_cast<int>(w.size());
  double loss = 0.0;
  for (const Record& r : records) {
    const double margin = r[d] * (Dot(r.data(), w.data(), d) + b);
    loss += std::max(0.0, 1.0 - margin);
  }
  return 0.5 * Dot(w.data(), w.data(), d) +
         C / static_cast<double>(records.size()) * loss;
}

double SvmMisclassification(std::span<const Record> records,
                            std::span<const double> w, double b) {
  if (records.empty()) return 0.0;
  const int d = static_cast<int>(w.size());
  std::int64_t wrong = 0;
  for (const Record& r : records) {
    const double score = Dot(r.data(), w.data(), d) + b;
    const double predicted = score >= 0.0 ? 1.0 : -1.0;
    if (predicted != r[d]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(records.size());
}

double SvmGlobalSensitivity(double C, int d, int n) {
  return 2.0 + 2.0 * C * std::sqrt(static_cast<double>(d)) +
         4.0 * C * d / static_cast<double>(n);
}

SvmTarget::SvmTarget(const SvmConfig& config, int n) : config_(config), n_(n) {
  if (n < 1) throw Error(ErrorCode::kDomain, "SvmTarget: n must be >= 1");
}

std::string SvmTarget::label() const {
  return "svm(C=" + FormatDouble(config_.C) + ",d=" + std::to_string(config_.d) +
         ")";
}

std::vector<double> SvmTarget::Evaluate(std::span<const Record> records) const {
  if (static_cast<int>(records.size()) != n_) {
    throw Error(ErrorCode::kDimensionMismatch, "SvmTarget: wrong record count");
  }
  SvmModel model = SvmTrain(records, config_);
  std::vector<double> out = std::move(model.w);
  out.push_back(model.b);
  return out;
}

std::optional<double> SvmTarget::GlobalSensitivity() const {
  return SvmGlobalSensitivity(config_.C, config_.d, n_);
}

}  // namespace sensikit
