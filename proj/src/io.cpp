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

#include "io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "error.hpp"

namespace mixcert {

namespace {

std::string FormatReal(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Dump(const Json& v, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (!pretty) return;
    out.push_back('\n');
    out.append(static_cast<size_t>(indent * level), ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        Dump(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& e : v) flat = flat && !e.is_structured();
      out.push_back('[');
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat && pretty ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        Dump(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float:
      out += FormatReal(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

[[noreturn]] void ParseError(const std::string& what) {
  throw Error(ErrorCode::kParse, what);
}

std::string_view Trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

long long ParseInteger(std::string_view s, long long line_no) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    ParseError("line " + std::to_string(line_no) + ": expected integer, got '" +
               std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string DumpJson(const Json& value, int indent) {
  std::string out;
  Dump(value, indent, 0, out);
  return out;
}

Json ChainToJson(const ChainSpec& chain) {
  Json j;
  j["d"] = chain.d();
  Json rows = Json::array();
  for (int i = 0; i < chain.d(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < chain.d(); ++k) row.push_back(chain.p()(i, k));
    rows.push_back(std::move(row));
  }
  j["P"] = std::move(rows);
  if (chain.pi_known()) {
    Json pi = Json::array();
    for (double v : *chain.pi_known()) pi.push_back(v);
    j["pi"] = std::move(pi);
  }
  return j;
}

ChainSpec ChainFromJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    ParseError(std::string("chain JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("P") || !j["P"].is_array()) {
    ParseError("chain JSON: expected an object with array field \"P\"");
  }
  const auto& rows = j["P"];
  const auto d = static_cast<Eigen::Index>(rows.size());
  if (j.contains("d") &&
      (!j["d"].is_number_integer() || j["d"].get<long long>() != d)) {
    ParseError("chain JSON: \"d\" does not match the number of rows of \"P\"");
  }
  Matrix p(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
      ParseError("chain JSON: row " + std::to_string(i) + " has wrong length");
    }
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto& e = row[static_cast<size_t>(k)];
      if (!e.is_number()) ParseError("chain JSON: non-numeric entry");
      p(i, k) = e.get<double>();
    }
  }
  std::optional<Vector> pi;
  if (j.contains("pi") && !j["pi"].is_null()) {
    const auto& jp = j["pi"];
    if (!jp.is_array() || static_cast<Eigen::Index>(jp.size()) != d) {
      ParseError("chain JSON: \"pi\" must be an array of length d");
    }
    pi = Vector(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      if (!jp[static_cast<size_t>(i)].is_number()) {
        ParseError("chain JSON: non-numeric pi entry");
      }
      (*pi)[i] = jp[static_cast<size_t>(i)].get<double>();
    }
  }
  return ChainSpec(std::move(p), std::move(pi));
}

std::string ReadFileToString(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + file + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteStringToFile(const std::string& text, const std::string& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + file + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write to '" + file + "' failed");
}

ChainSpec ReadChainFile(const std::string& file) {
  return ChainFromJson(ReadFileToString(file));
}

void WriteChainFile(const ChainSpec& chain, const std::string& file) {
  WriteStringToFile(DumpJson(ChainToJson(chain)) + "\n", file);
}

SamplePath ParsePathText(std::istream& in) {
  std::string line;
  long long line_no = 0;
  long long declared_d = -1;
  bool seen_data = false;
  std::vector<int> states;
  long long max_state = -1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view s = Trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (!seen_data && s.rfind("d=", 0) == 0) {
      declared_d = ParseInteger(Trim(s.substr(2)), line_no);
      if (declared_d < 1) ParseError("declared state count must be >= 1");
      seen_data = true;
      continue;
    }
    seen_data = true;
    const long long v = ParseInteger(s, line_no);
    if (v < 0 || (declared_d > 0 && v >= declared_d) || v > (1 << 30)) {
      ParseError("line " + std::to_string(line_no) + ": state " +
                 std::to_string(v) + " out of range");
    }
    max_state = std::max(max_state, v);
    states.push_back(static_cast<int>(v));
  }
  const long long d = declared_d > 0 ? declared_d : max_state + 1;
  if (d < 1) ParseError("path file contains no states");
  return SamplePath(static_cast<int>(d), std::move(states));
}

SamplePath ReadPathFile(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + file + "'");
  return ParsePathText(in);
}

std::string FormatPathText(const SamplePath& path) {
  std::string out = "d=" + std::to_string(path.d()) + "\n";
  out.reserve(out.size() + static_cast<size_t>(path.size()) * 3);
  for (int s : path.states()) {
    out += std::to_string(s);
    out.push_back('\n');
  }
  return out;
}

void WritePathFile(const SamplePath& path, const std::string& file) {
  WriteStringToFile(FormatPathText(path), file);
}

}  // namespace mixcert
