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

#ifndef SENSIKIT_RNG_H_
#define SENSIKIT_RNG_H_

#include <array>
#include <cstdint>
#include <limits>

namespace sensikit {

// Philox4x32-10 block function (Salmon et al., SC'11). Pure function of
// (counter, key).
std::array<std::uint32_t, 4> Philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Mixes a seed with a tag to obtain an unrelated seed (splitmix64 finalizer).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t tag);

// Counter-based generator. A (seed, stream) pair names an independent
// substream; draws within a stream are indexed by an internal block counter,
// so the output never depends on how streams are scheduled across threads.
// Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double Uniform();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // 32-bit words consumed from buffer_
};

// Inverse-CDF Laplace draw with location 0 and scale b:
//   u < 1/2: b log(2u);  otherwise: -b log(2(1 - u)).
double SampleLaplace(Rng& rng, double scale);

// Exponential with the given rate via -log(u) / rate.
double SampleExponential(Rng& rng, double rate);

// Standard normal via Box-Muller (cosine branch; one draw per call).
double SampleStandardNormal(Rng& rng);

}  // namespace sensikit

#endif  // SENSIKIT_RNG_H_
