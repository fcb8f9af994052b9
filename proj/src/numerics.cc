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

#include "sensikit/numerics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sensikit/error.h"

namespace sensikit {
namespace {

constexpr double kE = 2.718281828459045;
constexpr double kNegInvE = -0.36787944117144233;
constexpr int kMaxIterations = 100;

double InitialGuess(LambertBranch branch, double x) {
  // Series around the branch point in p = sqrt(2(e x + 1)).
  const double p = std::sqrt(std::max(0.0, 2.0 * (kE * x + 1.0)));
  if (branch == LambertBranch::kPrincipal) {
    if (x < -0.25) return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    if (x < 3.0) return std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
  }
  if (x < -0.25) return -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

}  // namespace

double LambertW(LambertBranch branch, double x) {
  if (std::isnan(x) || x < kNegInvE ||
      (branch == LambertBranch::kSecondary && x >= 0.0)) {
    std::ostringstream msg;
    msg << "LambertW: x = " << x << " outside the domain of the "
        << (branch == LambertBranch::kPrincipal ? "principal" : "secondary")
        << " branch";
    throw Error(ErrorCode::kDomain, msg.str());
  }
  if (x == kNegInvE) return -1.0;
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  // Bracket [lo, hi] on which f(w) = w e^w - x changes sign.
  double lo;
  double hi;
  if (branch == LambertBranch::kPrincipal) {
    lo = -1.0;
    hi = x <= kE ? 1.0 : std::log(x);
  } else {
    // w = log(-x) - log(-w) with -w >= 1 gives w <= log(-x). With
    // x = -exp(-u - 1), 2 log(-x) - 1 = -2u - 3 sits below -1 - sqrt(2u) - u.
    lo = 2.0 * std::log(-x) - 1.0;
    hi = std::min(-1.0, std::log(-x));
  }

  const double tolerance = 1e-12 * std::max(std::abs(x), 1e-300);
  double w = std::clamp(InitialGuess(branch, x), lo, hi);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    // f is increasing in w on the principal branch, decreasing on the
    // secondary one.
    const bool f_increasing = branch == LambertBranch::kPrincipal;
    if (f == 0.0) return w;
    if ((f > 0.0) == f_increasing) {
      hi = w;
    } else {
      lo = w;
    }
    const double wp1 = w + 1.0;
    double next;
    if (wp1 == 0.0) {
      next = 0.5 * (lo + hi);
    } else {
      const double fp = ew * wp1;
      next = w - f / (fp - (w + 2.0) * f / (2.0 * wp1));
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    }
    const double step = next - w;
    w = next;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() *
                              std::max(1.0, std::abs(w)) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, std::abs(w))) {
      if (std::abs(w * std::exp(w) - x) <= tolerance) return w;
    }
  }
  if (std::abs(w * std::exp(w) - x) <= tolerance) return w;
  std::ostringstream msg;
  msg << "LambertW: no convergence for x = " << x;
  throw Error(ErrorCode::kNumeric, msg.str());
}

double DkwDeviation(std::int64_t m, double rho) {
  if (m < 1 || !(rho > 0.0 && rho < 1.0)) {
    std::ostringstream msg;
    msg << "DkwDeviation: need m >= 1 and 0 < rho < 1, got m = " << m
        << ", rho = " << rho;
    throw Error(ErrorCode::kDomain, msg.str());
  }
  return std::sqrt(std::log(1.0 / rho) / (2.0 * static_cast<double>(m)));
}

}  // namespace sensikit
