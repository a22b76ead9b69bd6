// Copyright 2026 The mixcert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// File formats: chain JSON, path text, and a JSON writer that prints every
// real with 17 significant digits.
//
// Chain JSON:  {"d": 2, "P": [[0.9, 0.1], [0.5, 0.5]], "pi": [..optional..]}
//
// Path text:   lines starting with '#' are comments; the first other line
//              may be "d=<int>"; then one 0-based state per line. Without a
//              header, d is 1 + the largest state.

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "markov_core.hpp"

namespace mixcert {

using Json = nlohmann::ordered_json;

// Serializes with 17 significant digits for reals. Non-finite reals become
// the strings "inf", "-inf" and "nan". indent < 0 gives a single line.
std::string DumpJson(const Json& value, int indent = 2);

Json ChainToJson(const ChainSpec& chain);
// Throws Parse (malformed JSON or schema) or the ChainSpec validation codes.
ChainSpec ChainFromJson(const std::string& text);
ChainSpec ReadChainFile(const std::string& file);
void WriteChainFile(const ChainSpec& chain, const std::string& file);

// Throws Parse.
SamplePath ParsePathText(std::istream& in);
SamplePath ReadPathFile(const std::string& file);
std::string FormatPathText(const SamplePath& path);
void WritePathFile(const SamplePath& path, const std::string& file);

std::string ReadFileToString(const std::string& file);
void WriteStringToFile(const std::string& text, const std::string& file);

}  // namespace mixcert
