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

// Answer phrase selection over pre-parsed reference sentences.
//
// Sentences arrive already tagged and parsed (see annotation JSON below); the
// selectors never run a parser. Three strategies are supported:
//   NER        every entity span
//   NP_CHUNKS  every base noun-phrase chunk
//   MAX_NP     descending breadth-first from the dependency root, the full
//              subtree of each nominal token reached first
//
// Annotation JSON, one file per reference summary:
//   {"summarizer_id": str,
//    "sentences": [{"text": str,
//                   "tokens": [{"text": str, "pos": str, "head": int,
//                               "deprel": str}],
//                   "entities": [[start, end, "LABEL"]],
//                   "noun_chunks": [[start, end]]}]}
// Token heads index into the sentence, -1 marks the root. Spans are
// half-open token ranges.

#ifndef QAEVAL_ANSWER_SELECTION_H_
#define QAEVAL_ANSWER_SELECTION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qaeval/corpus.h"

namespace qaeval {

struct Token {
  std::string text;
  std::string pos;   // universal coarse tag
  int head = -1;     // -1 for the root
  std::string deprel;

  friend bool operator==(const Token&, const Token&) = default;
};

struct EntitySpan {
  int start = 0;
  int end = 0;
  std::string label;

  friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
};

struct ChunkSpan {
  int start = 0;
  int end = 0;

  friend bool operator==(const ChunkSpan&, const ChunkSpan&) = default;
};

struct AnnotatedSentence {
  std::string text;
  std::vector<Token> tokens;
  std::vector<EntitySpan> entities;
  std::vector<ChunkSpan> noun_chunks;

  int size() const { return static_cast<int>(tokens.size()); }

  // Throws AnnotationError on out-of-range heads or spans, or when the
  // dependency graph is not a single-rooted tree.
  void Validate() const;

  // The string questions are generated from: `text` when the tokens can be
  // located in it left to right, the detokenized tokens otherwise.
  std::string RenderedText() const;

  // Code point [begin, end) of each token within RenderedText().
  std::vector<std::pair<std::size_t, std::size_t>> TokenCharOffsets() const;

  friend bool operator==(const AnnotatedSentence&,
                         const AnnotatedSentence&) = default;
};

enum class Strategy { kNer, kNpChunks, kMaxNp };

std::string_view StrategyName(Strategy strategy);  // "NER", "NP_CHUNKS", ...
// Accepts the canonical names case-insensitively; throws PreconditionError.
Strategy ParseStrategy(std::string_view name);

struct AnswerSpan {
  int sentence_index = 0;
  int start = 0;  // token range [start, end)
  int end = 0;
  std::string text;  // detokenized token range
  Strategy strategy = Strategy::kNpChunks;
  std::string entity_label;  // NER only
  // Code point range of the span within the sentence's RenderedText().
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  friend bool operator==(const AnswerSpan&, const AnswerSpan&) = default;
};

std::vector<AnswerSpan> SelectNer(const AnnotatedSentence& sentence,
                                  int sentence_index = 0);
std::vector<AnswerSpan> SelectNpChunks(const AnnotatedSentence& sentence,
                                       int sentence_index = 0);
std::vector<AnswerSpan> SelectMaxNps(const AnnotatedSentence& sentence,
                                     int sentence_index = 0);
std::vector<AnswerSpan> SelectSentence(const AnnotatedSentence& sentence,
                                       Strategy strategy,
                                       int sentence_index = 0);

// Concatenates per-sentence selections in sentence order. Throws
// ValidationError when the annotations do not cover the reference text.
std::vector<AnswerSpan> SelectAnswers(
    const Summary& reference, const std::vector<AnnotatedSentence>& sentences,
    Strategy strategy);

struct ReferenceAnnotation {
  std::string summarizer_id;
  std::vector<AnnotatedSentence> sentences;
};

ReferenceAnnotation AnnotationFromJson(const nlohmann::json& j,
                                       const std::string& source);
nlohmann::json AnnotationToJson(const ReferenceAnnotation& annotation);
ReferenceAnnotation LoadAnnotation(const std::string& path);

// Annotations keyed by (instance_id, reference summarizer_id).
using AnnotationIndex =
    std::map<std::pair<std::string, std::string>, std::vector<AnnotatedSentence>>;

// Reads <dir>/<instance_id>/<summarizer_id>.json for every reference in the
// dataset (ids are path-escaped with EscapePathComponent). Throws
// ValidationError listing every reference without an annotation file.
AnnotationIndex LoadAnnotationDir(const std::string& dir,
                                  const EvalDataset& dataset);

// Replaces characters outside [A-Za-z0-9._-] with %XX.
std::string EscapePathComponent(std::string_view id);

}  // namespace qaeval

#endif  // QAEVAL_ANSWER_SELECTION_H_
