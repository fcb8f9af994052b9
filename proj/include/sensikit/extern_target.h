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

#ifndef SENSIKIT_EXTERN_TARGET_H_
#define SENSIKIT_EXTERN_TARGET_H_

#include <exception>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>
#include <vector>

#include "sensikit/target.h"

namespace sensikit {

// Black-box target backed by an external program. Each evaluation runs the
// program once, writes the n records as CSV lines to its standard input,
// closes it, and reads one line of space-separated decimals from its
// standard output. The program must be deterministic: the first evaluation
// is run twice and a mismatch raises Error(kTargetEvaluation).
//
// Constructing an ExternTarget ignores SIGPIPE process-wide so that a
// program exiting early surfaces as an error instead of killing the caller.
class ExternTarget : public TargetFunction {
 public:
  ExternTarget(std::string program, int n, OutputNorm norm, int max_workers = 4);

  int arity() const override { return n_; }
  OutputNorm norm() const override { return norm_; }
  std::string label() const override { return "extern:" + program_; }
  std::vector<double> Evaluate(std::span<const Record> records) const override;

  // Runs the program once without the determinism check.
  std::vector<double> RunOnce(std::span<const Record> records) const;

 private:
  std::string program_;
  int n_;
  OutputNorm norm_;
  std::unique_ptr<std::counting_semaphore<>> workers_;
  mutable std::once_flag determinism_checked_;
};

}  // namespace sensikit

#endif  // SENSIKIT_EXTERN_TARGET_H_
