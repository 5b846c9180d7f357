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

// Evaluation dataset: multi-reference, multi-system instances with human
// responsiveness judgments.
//
// File format (UTF-8 JSON):
//   {"instances": [{"instance_id": str,
//                   "references": [{"summarizer_id": str, "text": str}],
//                   "candidates": [{"summarizer_id": str,
//                                   "summarizer_type": "peer"|"reference",
//                                   "text": str}],
//                   "judgments": {str: number}}]}
// Summaries may carry an optional "sentences": [str] split.

#ifndef QAEVAL_CORPUS_H_
#define QAEVAL_CORPUS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qaeval/score_matrix.h"

namespace qaeval {

enum class SummarizerType { kPeer, kReference };

std::string_view SummarizerTypeName(SummarizerType type);

struct Summary {
  std::string summarizer_id;
  SummarizerType summarizer_type = SummarizerType::kPeer;
  std::string text;
  std::optional<std::vector<std::string>> sentences;

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct EvalInstance {
  std::string instance_id;
  std::vector<Summary> references;
  std::vector<Summary> candidates;  // file order; ids unique
  std::map<std::string, double> judgments;

  const Summary* FindCandidate(std::string_view summarizer_id) const;

  friend bool operator==(const EvalInstance&, const EvalInstance&) = default;
};

struct EvalDataset {
  std::vector<EvalInstance> instances;
  // Candidate summarizers in order of first appearance.
  std::vector<std::string> system_ids;
  // Systems missing from at least one instance.
  std::set<std::string> incomplete_systems;

  std::size_t num_instances() const { return instances.size(); }
  std::size_t num_systems() const { return system_ids.size(); }
  std::vector<std::string> instance_ids() const;
  const EvalInstance* FindInstance(std::string_view instance_id) const;

  // Summarizer type per system. Throws ValidationError if a system is typed
  // inconsistently across instances.
  std::map<std::string, SummarizerType> SystemTypes() const;

  friend bool operator==(const EvalDataset&, const EvalDataset&) = default;
};

// Checks every invariant and fills system_ids / incomplete_systems.
// Throws ValidationError naming the instance and field on violation.
EvalDataset BuildDataset(std::vector<EvalInstance> instances);

EvalDataset DatasetFromJson(const nlohmann::json& j);
nlohmann::json DatasetToJson(const EvalDataset& dataset);

// Throws FormatError on syntax/schema problems, ValidationError on invariant
// violations.
EvalDataset LoadDataset(const std::string& path);

// Responsiveness of system i on instance j; absent judgments stay missing.
ScoreMatrix JudgmentMatrix(const EvalDataset& dataset);

}  // namespace qaeval

#endif  // QAEVAL_CORPUS_H_
