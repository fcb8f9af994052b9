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

#ifndef SENSIKIT_NUMERICS_H_
#define SENSIKIT_NUMERICS_H_

#include <cstdint>

namespace sensikit {

// Real branches of the Lambert-W function, the inverse relation of
// w -> w * exp(w).
enum class LambertBranch {
  kPrincipal,  // W_0: x >= -1/e, value >= -1.
  kSecondary,  // W_-1: -1/e <= x < 0, value <= -1.
};

// Solves w * exp(w) = x on the requested branch with a bracketed Halley
// iteration. The result satisfies |w e^w - x| <= 1e-12 * max(|x|, 1e-300).
// Both branches return exactly -1 at the branch point x = -1/e.
//
// Throws Error(kDomain) if x lies outside the branch's domain and
// Error(kNumeric) if the iteration fails to converge.
double LambertW(LambertBranch branch, double x);

// One-sided DKW deviation sqrt(log(1/rho) / (2m)): with probability at least
// 1 - rho the empirical CDF of m draws exceeds the true CDF by at most this.
double DkwDeviation(std::int64_t m, double rho);

}  // namespace sensikit

#endif  // SENSIKIT_NUMERICS_H_
