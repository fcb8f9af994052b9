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

#ifndef SENSIKIT_DATASET_H_
#define SENSIKIT_DATASET_H_

#include <string>
#include <vector>

#include "sensikit/rng.h"
#include "sensikit/target.h"

namespace sensikit {

// CSV datasets: one record per line, comma-separated decimals with '.' as
// the decimal point (features then label for SVM data). Blank lines and lines
// starting with '#' are skipped.
std::vector<Record> ParseDataset(const std::string& text);
std::string FormatDataset(const std::vector<Record>& records);

std::vector<Record> ReadDataset(const std::string& path);
void WriteDataset(const std::vector<Record>& records, const std::string& path);

// n records drawn from `sampler` on stream `stream` of `seed`.
std::vector<Record> DrawDatabase(const RecordSampler& sampler, int n,
                                 std::uint64_t seed, std::uint64_t stream = 0);

}  // namespace sensikit

#endif  // SENSIKIT_DATASET_H_
