// Copyright 2026 The QAEval Toolkit Authors.
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

#include "qaeval/io.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qaeval/errors.h"

namespace qaeval::io {

using nlohmann::json;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFileAtomic(const std::string& path, std::string_view contents) {
  static std::atomic<unsigned> counter{0};
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path());
  }
  const std::string tmp = path + ".tmp." + std::to_string(::getpid()) + "." +
                          std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

json ParseJson(std::string_view contents, const std::string& source) {
  try {
    return json::parse(contents);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, contents.size());
    const auto line =
        1 + std::count(contents.begin(), contents.begin() + byte, '\n');
    throw FormatError(source + " line " + std::to_string(line), e.what());
  }
}

json ReadJsonFile(const std::string& path) {
  return ParseJson(ReadFile(path), path);
}

std::string DumpJson(const json& j) { return j.dump(2) + "\n"; }

const json& Field(const json& obj, const char* key, const std::string& where) {
  ExpectObject(obj, where);
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError(where, std::string("missing field \"") + key + "\"");
  }
  return *it;
}

std::string StringField(const json& obj, const char* key,
                        const std::string& where) {
  const json& value = Field(obj, key, where);
  if (!value.is_string()) {
    throw FormatError(where + "." + key, "expected string");
  }
  return value.get<std::string>();
}

int IntField(const json& obj, const char* key, const std::string& where) {
  const json& value = Field(obj, key, where);
  if (!value.is_number_integer()) {
    throw FormatError(where + "." + key, "expected integer");
  }
  return value.get<int>();
}

double NumberField(const json& obj, const char* key, const std::string& where) {
  const json& value = Field(obj, key, where);
  if (!value.is_number()) {
    throw FormatError(where + "." + key, "expected number");
  }
  const double d = value.get<double>();
  if (!std::isfinite(d)) throw FormatError(where + "." + key, "not finite");
  return d;
}

void ExpectArray(const json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where, "expected array");
}

void ExpectObject(const json& j, const std::string& where) {
  if (!j.is_object()) throw FormatError(where, "expected object");
}

}  // namespace qaeval::io
