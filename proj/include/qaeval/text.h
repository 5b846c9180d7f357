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

// UTF-8 text utilities: code point classification, whitespace tokenization,
// detokenization and byte/code-point offset conversion.

#ifndef QAEVAL_TEXT_H_
#define QAEVAL_TEXT_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qaeval::text {

// Decodes UTF-8; invalid sequences decode to U+FFFD.
std::u32string Decode(std::string_view utf8);
std::string Encode(std::u32string_view code_points);
void AppendUtf8(char32_t c, std::string& out);

// Unicode general category P* (Pc, Pd, Ps, Pe, Pi, Pf, Po).
bool IsPunctuation(char32_t c);
// Unicode White_Space property.
bool IsWhitespace(char32_t c);
// Simple (single code point) lower/upper case mapping.
char32_t ToLower(char32_t c);
char32_t ToUpper(char32_t c);

struct Piece {
  std::string text;
  std::size_t byte_begin = 0;
  std::size_t byte_end = 0;
};

// Splits on Unicode whitespace, keeping byte offsets into `s`.
std::vector<Piece> SplitWhitespace(std::string_view s);

// Removes Unicode whitespace from both ends.
std::string Trim(std::string_view s);
// Removes all Unicode whitespace; used for "equal modulo whitespace" checks.
std::string StripAllWhitespace(std::string_view s);

// Tokens that attach to the previous token without a space.
bool IsClosingToken(std::string_view token);

// Joins tokens with single spaces except before closing punctuation and
// clitics ("'s", "n't").
std::string Detokenize(std::span<const std::string> tokens);

// Character offsets are code point indices.
std::size_t CodePointCount(std::string_view s);
std::size_t ByteToCodePointOffset(std::string_view s, std::size_t byte_offset);
// Returns nullopt when `cp_offset` exceeds the string length.
std::optional<std::size_t> CodePointToByteOffset(std::string_view s,
                                                 std::size_t cp_offset);

// Uppercases the first code point.
std::string CapitalizeFirst(std::string_view s);

}  // namespace qaeval::text

#endif  // QAEVAL_TEXT_H_
