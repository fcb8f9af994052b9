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

#ifndef SENSIKIT_PARALLEL_H_
#define SENSIKIT_PARALLEL_H_

#include <cstdint>
#include <functional>

namespace sensikit {

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index
// runs exactly once; callers write results by index so the outcome does not
// depend on scheduling. If any body throws, the exception from the lowest
// failing index observed is rethrown after all workers stop.
void ParallelFor(std::int64_t count, int threads,
                 const std::function<void(std::int64_t)>& body);

// Resolves a requested thread count: values < 1 mean hardware concurrency.
int ResolveThreads(int requested);

}  // namespace sensikit

#endif  // SENSIKIT_PARALLEL_H_
