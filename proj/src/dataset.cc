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

#include "sensikit/dataset.h"

#include <sstream>

#include "sensikit/error.h"
#include "sensikit/text_io.h"

namespace sensikit {

std::vector<Record> ParseDataset(const std::string& text) {
  std::vector<Record> records;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view trimmed = TrimWhitespace(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    Record r;
    try {
      for (std::string_view field : SplitString(trimmed, ',')) {
        r.push_back(ParseDouble(field));
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::kParse,
                  "dataset line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!records.empty() && r.size() != records.front().size()) {
      throw Error(ErrorCode::kParse, "dataset line " + std::to_string(line_no) +
                                         ": inconsistent number of fields");
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::string FormatDataset(const std::vector<Record>& records) {
  std::string out;
  for (const Record& r : records) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j > 0) out += ',';
      out += FormatDouble(r[j]);
    }
    out += '\n';
  }
  return out;
}

std::vector<Record> ReadDataset(const std::string& path) {
  return ParseDataset(ReadTextFile(path));
}

void WriteDataset(const std::vector<Record>& records, const std::string& path) {
  WriteTextFile(path, FormatDataset(records));
}

std::vector<Record> DrawDatabase(const RecordSampler& sampler, int n,
                                 std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  std::vector<Record> records;
  records.reserve(n);
  for (int i = 0; i < n; ++i) records.push_back(sampler.Draw(rng));
  return records;
}

}  // namespace sensikit
