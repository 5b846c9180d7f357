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

#ifndef QAEVAL_IO_H_
#define QAEVAL_IO_H_

#include <string>
#include <string_view>

#include "json.hpp"

namespace qaeval::io {

std::string ReadFile(const std::string& path);

// Writes to a sibling temporary file and renames it over `path`.
void WriteFileAtomic(const std::string& path, std::string_view contents);

// Parses JSON; syntax errors become FormatError("<path> line N", ...).
nlohmann::json ParseJson(std::string_view contents, const std::string& source);
nlohmann::json ReadJsonFile(const std::string& path);

// Two-space indented JSON with a trailing newline.
std::string DumpJson(const nlohmann::json& j);

// Field accessors that throw FormatError with `where` as the location.
const nlohmann::json& Field(const nlohmann::json& obj, const char* key,
                            const std::string& where);
std::string StringField(const nlohmann::json& obj, const char* key,
                        const std::string& where);
int IntField(const nlohmann::json& obj, const char* key,
             const std::string& where);
double NumberField(const nlohmann::json& obj, const char* key,
                   const std::string& where);
void ExpectArray(const nlohmann::json& j, const std::string& where);
void ExpectObject(const nlohmann::json& j, const std::string& where);

}  // namespace qaeval::io

#endif  // QAEVAL_IO_H_
