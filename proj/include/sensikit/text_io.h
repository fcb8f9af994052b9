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

#ifndef SENSIKIT_TEXT_IO_H_
#define SENSIKIT_TEXT_IO_H_

#include <string>
#include <string_view>
#include <vector>

namespace sensikit {

// Shortest decimal that parses back to the same double.
std::string FormatDouble(double value);

// Parses the whole of `text` as a double; throws Error(kParse) otherwise.
double ParseDouble(std::string_view text);

std::vector<std::string_view> SplitString(std::string_view text, char sep);
std::string_view TrimWhitespace(std::string_view text);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& contents);

}  // namespace sensikit

#endif  // SENSIKIT_TEXT_IO_H_
