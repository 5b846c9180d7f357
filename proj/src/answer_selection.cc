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

#include "qaeval/answer_selection.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <filesystem>
#include <set>

#include "qaeval/errors.h"
#include "qaeval/io.h"
#include "qaeval/text.h"

namespace qaeval {

using nlohmann::json;

namespace {

bool IsNominal(std::string_view pos) {
  return pos == "NOUN" || pos == "PROPN" || pos == "PRON";
}

std::vector<std::string> TokenTexts(const AnnotatedSentence& sentence) {
  std::vector<std::string> texts;
  texts.reserve(sentence.tokens.size());
  for (const auto& token : sentence.tokens) texts.push_back(token.text);
  return texts;
}

// Byte ranges of each token inside `sentence.text`, or nullopt when the
// tokens cannot be found there in order.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> AlignTokens(
    const AnnotatedSentence& sentence) {
  const std::string& s = sentence.text;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t cursor = 0;
  for (const auto& token : sentence.tokens) {
    while (cursor < s.size() &&
           std::isspace(static_cast<unsigned char>(s[cursor]))) {
      ++cursor;
    }
    if (token.text.empty() || s.compare(cursor, token.text.size(), token.text)) {
      return std::nullopt;
    }
    ranges.emplace_back(cursor, cursor + token.text.size());
    cursor += token.text.size();
  }
  return ranges;
}

AnswerSpan MakeSpan(const std::vector<std::pair<std::size_t, std::size_t>>&
                        offsets,
                    const std::vector<std::string>& texts, int sentence_index,
                    int start, int end, Strategy strategy, std::string label) {
  AnswerSpan span;
  span.sentence_index = sentence_index;
  span.start = start;
  span.end = end;
  span.text = text::Detokenize(
      std::span<const std::string>(texts).subspan(start, end - start));
  span.strategy = strategy;
  span.entity_label = std::move(label);
  span.char_start = offsets[start].first;
  span.char_end = offsets[end - 1].second;
  return span;
}

void CheckSpan(int start, int end, int size, const char* what) {
  if (start < 0 || start >= end || end > size) {
    throw AnnotationError(std::string(what) + " span [" +
                          std::to_string(start) + ", " + std::to_string(end) +
                          ") outside sentence of " + std::to_string(size) +
                          " tokens");
  }
}

}  // namespace

void AnnotatedSentence::Validate() const {
  const int n = size();
  if (n == 0) throw AnnotationError("sentence has no tokens");
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const Token& token = tokens[i];
    if (token.text.empty()) {
      throw AnnotationError("token " + std::to_string(i) + " is empty");
    }
    if (token.head < -1 || token.head >= n || token.head == i) {
      throw AnnotationError("token " + std::to_string(i) + " has invalid head " +
                            std::to_string(token.head));
    }
    if (token.head == -1) ++roots;
  }
  if (roots != 1) {
    throw AnnotationError("dependency graph has " + std::to_string(roots) +
                          " roots");
  }
  // With one root and one head per token, the graph is a tree iff every
  // token reaches the root within n steps.
  for (int i = 0; i < n; ++i) {
    int node = i;
    int steps = 0;
    while (tokens[node].head != -1) {
      node = tokens[node].head;
      if (++steps > n) {
        throw AnnotationError("dependency cycle through token " +
                              std::to_string(i));
      }
    }
  }
  for (const auto& e : entities) CheckSpan(e.start, e.end, n, "entity");
  for (const auto& c : noun_chunks) CheckSpan(c.start, c.end, n, "noun chunk");
}

std::string AnnotatedSentence::RenderedText() const {
  if (AlignTokens(*this)) return text;
  return text::Detokenize(TokenTexts(*this));
}

std::vector<std::pair<std::size_t, std::size_t>>
AnnotatedSentence::TokenCharOffsets() const {
  std::vector<std::pair<std::size_t, std::size_t>> offsets;
  if (auto aligned = AlignTokens(*this)) {
    for (const auto& [begin, end] : *aligned) {
      offsets.emplace_back(text::ByteToCodePointOffset(text, begin),
                           text::ByteToCodePointOffset(text, end));
    }
    return offsets;
  }
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !text::IsClosingToken(tokens[i].text)) ++cursor;
    const std::size_t length = text::CodePointCount(tokens[i].text);
    offsets.emplace_back(cursor, cursor + length);
    cursor += length;
  }
  return offsets;
}

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kNer:
      return "NER";
    case Strategy::kNpChunks:
      return "NP_CHUNKS";
    case Strategy::kMaxNp:
      return "MAX_NP";
  }
  return "";
}

Strategy ParseStrategy(std::string_view name) {
  std::string upper;
  for (char c : name) {
    upper.push_back(c == '-' ? '_'
                             : static_cast<char>(std::toupper(
                                   static_cast<unsigned char>(c))));
  }
  if (upper == "NER") return Strategy::kNer;
  if (upper == "NP_CHUNKS") return Strategy::kNpChunks;
  if (upper == "MAX_NP") return Strategy::kMaxNp;
  throw PreconditionError("unknown answer selection strategy \"" +
                          std::string(name) +
                          "\" (expected NER, NP_CHUNKS or MAX_NP)");
}

std::vector<AnswerSpan> SelectNer(const AnnotatedSentence& sentence,
                                  int sentence_index) {
  sentence.Validate();
  const auto offsets = sentence.TokenCharOffsets();
  const auto texts = TokenTexts(sentence);
  std::vector<AnswerSpan> spans;
  std::set<std::pair<int, int>> seen;
  for (const auto& entity : sentence.entities) {
    if (!seen.insert({entity.start, entity.end}).second) continue;
    spans.push_back(MakeSpan(offsets, texts, sentence_index,
                             entity.start, entity.end, Strategy::kNer,
                             entity.label));
  }
  return spans;
}

std::vector<AnswerSpan> SelectNpChunks(const AnnotatedSentence& sentence,
                                       int sentence_index) {
  sentence.Validate();
  const auto offsets = sentence.TokenCharOffsets();
  const auto texts = TokenTexts(sentence);
  std::vector<AnswerSpan> spans;
  std::set<std::pair<int, int>> seen;
  for (const auto& chunk : sentence.noun_chunks) {
    if (!seen.insert({chunk.start, chunk.end}).second) continue;
    spans.push_back(MakeSpan(offsets, texts, sentence_index,
                             chunk.start, chunk.end, Strategy::kNpChunks, ""));
  }
  return spans;
}

std::vector<AnswerSpan> SelectMaxNps(const AnnotatedSentence& sentence,
                                     int sentence_index) {
  sentence.Validate();
  const int n = sentence.size();
  std::vector<std::vector<int>> children(n);
  int root = -1;
  for (int i = 0; i < n; ++i) {
    if (sentence.tokens[i].head == -1) {
      root = i;
    } else {
      children[sentence.tokens[i].head].push_back(i);
    }
  }

  std::vector<std::pair<int, int>> ranges;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    if (!IsNominal(sentence.tokens[node].pos)) {
      for (int child : children[node]) queue.push_back(child);
      continue;
    }
    // Smallest contiguous range covering the subtree.
    int lo = node;
    int hi = node;
    std::vector<int> stack{node};
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      lo = std::min(lo, t);
      hi = std::max(hi, t);
      for (int child : children[t]) stack.push_back(child);
    }
    ranges.emplace_back(lo, hi + 1);
  }
  std::sort(ranges.begin(), ranges.end());
  ranges.erase(std::unique(ranges.begin(), ranges.end()), ranges.end());

  const auto offsets = sentence.TokenCharOffsets();
  const auto texts = TokenTexts(sentence);
  std::vector<AnswerSpan> spans;
  for (const auto& [start, end] : ranges) {
    spans.push_back(MakeSpan(offsets, texts, sentence_index, start,
                             end, Strategy::kMaxNp, ""));
  }
  return spans;
}

std::vector<AnswerSpan> SelectSentence(const AnnotatedSentence& sentence,
                                       Strategy strategy, int sentence_index) {
  switch (strategy) {
    case Strategy::kNer:
      return SelectNer(sentence, sentence_index);
    case Strategy::kNpChunks:
      return SelectNpChunks(sentence, sentence_index);
    case Strategy::kMaxNp:
      return SelectMaxNps(sentence, sentence_index);
  }
  return {};
}

std::vector<AnswerSpan> SelectAnswers(
    const Summary& reference, const std::vector<AnnotatedSentence>& sentences,
    Strategy strategy) {
  const auto mismatch = [&](const std::string& detail) {
    return ValidationError("annotations for \"" + reference.summarizer_id +
                           "\" do not align with its text: " + detail);
  };
  if (reference.sentences) {
    if (reference.sentences->size() != sentences.size()) {
      throw mismatch(std::to_string(sentences.size()) +
                     " annotated sentences, " +
                     std::to_string(reference.sentences->size()) +
                     " in the summary");
    }
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (text::StripAllWhitespace(sentences[i].RenderedText()) !=
          text::StripAllWhitespace((*reference.sentences)[i])) {
        throw mismatch("sentence " + std::to_string(i) + " differs");
      }
    }
  } else {
    std::string joined;
    for (const auto& sentence : sentences) {
      joined += text::StripAllWhitespace(sentence.RenderedText());
    }
    if (joined != text::StripAllWhitespace(reference.text)) {
      throw mismatch("concatenated sentences differ from the summary text");
    }
  }

  std::vector<AnswerSpan> answers;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    auto spans = SelectSentence(sentences[i], strategy, static_cast<int>(i));
    answers.insert(answers.end(), std::make_move_iterator(spans.begin()),
                   std::make_move_iterator(spans.end()));
  }
  return answers;
}

ReferenceAnnotation AnnotationFromJson(const json& j,
                                       const std::string& source) {
  ReferenceAnnotation annotation;
  annotation.summarizer_id = io::StringField(j, "summarizer_id", source);
  const json& sentences = io::Field(j, "sentences", source);
  io::ExpectArray(sentences, source + ".sentences");
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const std::string where = source + ".sentences[" + std::to_string(s) + "]";
    const json& item = sentences[s];
    AnnotatedSentence sentence;
    sentence.text = io::StringField(item, "text", where);
    const json& tokens = io::Field(item, "tokens", where);
    io::ExpectArray(tokens, where + ".tokens");
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      const std::string tw = where + ".tokens[" + std::to_string(t) + "]";
      Token token;
      token.text = io::StringField(tokens[t], "text", tw);
      token.pos = io::StringField(tokens[t], "pos", tw);
      token.head = io::IntField(tokens[t], "head", tw);
      token.deprel = io::StringField(tokens[t], "deprel", tw);
      sentence.tokens.push_back(std::move(token));
    }
    if (auto it = item.find("entities"); it != item.end()) {
      io::ExpectArray(*it, where + ".entities");
      for (std::size_t e = 0; e < it->size(); ++e) {
        const json& entity = (*it)[e];
        const std::string ew = where + ".entities[" + std::to_string(e) + "]";
        if (!entity.is_array() || entity.size() != 3 ||
            !entity[0].is_number_integer() || !entity[1].is_number_integer() ||
            !entity[2].is_string()) {
          throw FormatError(ew, "expected [start, end, \"LABEL\"]");
        }
        sentence.entities.push_back({entity[0].get<int>(), entity[1].get<int>(),
                                     entity[2].get<std::string>()});
      }
    }
    if (auto it = item.find("noun_chunks"); it != item.end()) {
      io::ExpectArray(*it, where + ".noun_chunks");
      for (std::size_t c = 0; c < it->size(); ++c) {
        const json& chunk = (*it)[c];
        if (!chunk.is_array() || chunk.size() != 2 ||
            !chunk[0].is_number_integer() || !chunk[1].is_number_integer()) {
          throw FormatError(where + ".noun_chunks[" + std::to_string(c) + "]",
                            "expected [start, end]");
        }
        sentence.noun_chunks.push_back(
            {chunk[0].get<int>(), chunk[1].get<int>()});
      }
    }
    try {
      sentence.Validate();
    } catch (const AnnotationError& e) {
      throw AnnotationError(where + ": " + e.what());
    }
    annotation.sentences.push_back(std::move(sentence));
  }
  return annotation;
}

json AnnotationToJson(const ReferenceAnnotation& annotation) {
  json sentences = json::array();
  for (const auto& sentence : annotation.sentences) {
    json tokens = json::array();
    for (const auto& token : sentence.tokens) {
      tokens.push_back(json{{"text", token.text},
                            {"pos", token.pos},
                            {"head", token.head},
                            {"deprel", token.deprel}});
    }
    json entities = json::array();
    for (const auto& e : sentence.entities) {
      entities.push_back(json::array({e.start, e.end, e.label}));
    }
    json chunks = json::array();
    for (const auto& c : sentence.noun_chunks) {
      chunks.push_back(json::array({c.start, c.end}));
    }
    sentences.push_back(json{{"text", sentence.text},
                             {"tokens", std::move(tokens)},
                             {"entities", std::move(entities)},
                             {"noun_chunks", std::move(chunks)}});
  }
  return json{{"summarizer_id", annotation.summarizer_id},
              {"sentences", std::move(sentences)}};
}

ReferenceAnnotation LoadAnnotation(const std::string& path) {
  return AnnotationFromJson(io::ReadJsonFile(path), path);
}

std::string EscapePathComponent(std::string_view id) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : id) {
    if (std::isalnum(c) || c == '-' || c == '_' || (c == '.' && !out.empty())) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

AnnotationIndex LoadAnnotationDir(const std::string& dir,
                                  const EvalDataset& dataset) {
  namespace fs = std::filesystem;
  AnnotationIndex index;
  std::vector<std::string> missing;
  for (const auto& instance : dataset.instances) {
    for (const auto& ref : instance.references) {
      const fs::path path = fs::path(dir) /
                            EscapePathComponent(instance.instance_id) /
                            (EscapePathComponent(ref.summarizer_id) + ".json");
      if (!fs::exists(path)) {
        missing.push_back(instance.instance_id + "/" + ref.summarizer_id);
        continue;
      }
      ReferenceAnnotation annotation = LoadAnnotation(path.string());
      if (annotation.summarizer_id != ref.summarizer_id) {
        throw ValidationError(path.string() + ": summarizer_id \"" +
                              annotation.summarizer_id + "\" expected \"" +
                              ref.summarizer_id + "\"");
      }
      index[{instance.instance_id, ref.summarizer_id}] =
          std::move(annotation.sentences);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ValidationError("missing annotations for " +
                          std::to_string(missing.size()) +
                          " reference(s): " + list);
  }
  return index;
}

}  // namespace qaeval
