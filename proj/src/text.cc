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

#include "qaeval/text.h"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <array>

namespace qaeval::text {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

// Decodes one code point starting at `i`, advancing it.
char32_t NextCodePoint(std::string_view s, std::size_t& i) {
  int32_t offset = static_cast<int32_t>(i);
  const int32_t length = static_cast<int32_t>(s.size());
  UChar32 c;
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), offset, length, c);
  i = static_cast<std::size_t>(offset);
  return c < 0 ? kReplacement : static_cast<char32_t>(c);
}

}  // namespace

std::u32string Decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) out.push_back(NextCodePoint(utf8, i));
  return out;
}

void AppendUtf8(char32_t c, std::string& out) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string Encode(std::u32string_view code_points) {
  std::string out;
  out.reserve(code_points.size());
  for (char32_t c : code_points) AppendUtf8(c, out);
  return out;
}

bool IsPunctuation(char32_t c) {
  return (U_GET_GC_MASK(static_cast<UChar32>(c)) & U_GC_P_MASK) != 0;
}

bool IsWhitespace(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

char32_t ToLower(char32_t c) {
  return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
}

char32_t ToUpper(char32_t c) {
  return static_cast<char32_t>(u_toupper(static_cast<UChar32>(c)));
}

std::vector<Piece> SplitWhitespace(std::string_view s) {
  std::vector<Piece> pieces;
  std::size_t i = 0;
  bool in_piece = false;
  std::size_t begin = 0;
  while (i < s.size()) {
    const std::size_t at = i;
    const char32_t c = NextCodePoint(s, i);
    if (IsWhitespace(c)) {
      if (in_piece) {
        pieces.push_back({std::string(s.substr(begin, at - begin)), begin, at});
        in_piece = false;
      }
    } else if (!in_piece) {
      in_piece = true;
      begin = at;
    }
  }
  if (in_piece) {
    pieces.push_back(
        {std::string(s.substr(begin, s.size() - begin)), begin, s.size()});
  }
  return pieces;
}

std::string Trim(std::string_view s) {
  const auto pieces = SplitWhitespace(s);
  if (pieces.empty()) return "";
  const std::size_t begin = pieces.front().byte_begin;
  return std::string(s.substr(begin, pieces.back().byte_end - begin));
}

std::string StripAllWhitespace(std::string_view s) {
  std::string out;
  for (const auto& piece : SplitWhitespace(s)) out += piece.text;
  return out;
}

bool IsClosingToken(std::string_view token) {
  static constexpr std::array<std::string_view, 13> kClosing = {
      ".", ",", ";", ":", "!", "?", ")", "]", "}", "%", "...", "n't", "''"};
  for (auto closing : kClosing) {
    if (token == closing) return true;
  }
  // Clitics such as 's, 're, 'll.
  return token.size() >= 2 && token.front() == '\'';
}

std::string Detokenize(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !IsClosingToken(tokens[i])) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::size_t CodePointCount(std::string_view s) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    NextCodePoint(s, i);
    ++count;
  }
  return count;
}

std::size_t ByteToCodePointOffset(std::string_view s, std::size_t byte_offset) {
  return CodePointCount(s.substr(0, std::min(byte_offset, s.size())));
}

std::optional<std::size_t> CodePointToByteOffset(std::string_view s,
                                                 std::size_t cp_offset) {
  std::size_t i = 0;
  for (std::size_t n = 0; n < cp_offset; ++n) {
    if (i >= s.size()) return std::nullopt;
    NextCodePoint(s, i);
  }
  return i;
}

std::string CapitalizeFirst(std::string_view s) {
  if (s.empty()) return "";
  std::size_t i = 0;
  const char32_t first = NextCodePoint(s, i);
  std::string out;
  AppendUtf8(ToUpper(first), out);
  out.append(s.substr(i));
  return out;
}

}  // namespace qaeval::text
