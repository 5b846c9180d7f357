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

// Answer verification and QAEval scoring.
//
// A prediction is verified against the gold answer with SQuAD-style exact
// match and token F1 after normalization (lowercase, drop Unicode
// punctuation and ASCII symbols, drop the articles a/an/the, collapse
// whitespace). A NULL
// prediction scores 0. A candidate's score is the fraction of questions
// answered correctly per reference, macro-averaged over references.

#ifndef QAEVAL_SCORING_H_
#define QAEVAL_SCORING_H_

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qaeval/backends.h"
#include "qaeval/corpus.h"
#include "qaeval/score_matrix.h"

namespace qaeval {

std::string NormalizeAnswer(std::string_view text);
std::vector<std::string> NormalizedTokens(std::string_view text);

int EmScore(std::string_view prediction, std::string_view gold);
// Multiset token overlap F1; 1 when both sides normalize to nothing, 0 when
// exactly one does.
double F1Score(std::string_view prediction, std::string_view gold);

struct VerifiedAnswer {
  std::string question_id;
  int em = 0;
  double f1 = 0.0;
  std::optional<bool> human_correct;
};

VerifiedAnswer Verify(const Prediction& prediction, std::string_view gold);

// Human verification file: {question_id: {"answerable": bool,
// "human_answer": str|null, "correct": bool}}. Keys may also take the form
// "<summarizer_id>:<question_id>" to judge one candidate's answer.
struct HumanJudgment {
  bool answerable = false;
  std::optional<std::string> human_answer;
  bool correct = false;
};
using HumanAnnotations = std::map<std::string, HumanJudgment>;

HumanAnnotations HumanAnnotationsFromJson(const nlohmann::json& j,
                                          const std::string& source);
HumanAnnotations LoadHumanAnnotations(const std::string& path);

class Verifier {
 public:
  static Verifier Automatic() { return Verifier(nullptr); }
  static Verifier Human(std::shared_ptr<const HumanAnnotations> annotations) {
    return Verifier(std::move(annotations));
  }

  bool is_human() const { return annotations_ != nullptr; }

  // The human path replaces em and f1 with the annotated correct bit.
  // Throws ValidationError when the annotation for the question is missing.
  VerifiedAnswer operator()(const QAPair& question, const Prediction& prediction,
                            std::string_view summarizer_id = "") const;

 private:
  explicit Verifier(std::shared_ptr<const HumanAnnotations> annotations)
      : annotations_(std::move(annotations)) {}

  std::shared_ptr<const HumanAnnotations> annotations_;
};

enum class Averaging { kMacro, kMicro };

struct ReferenceScore {
  std::string reference_id;
  double em = 0.0;
  double f1 = 0.0;
  std::size_t num_questions = 0;

  friend bool operator==(const ReferenceScore&, const ReferenceScore&) = default;
};

struct QAEvalScore {
  double em = 0.0;
  double f1 = 0.0;
  std::vector<ReferenceScore> per_reference;
};

// Mean over references that have at least one question; 0 if none do.
// Summation runs in the given order.
double MacroAverage(const std::vector<double>& values);

// Scores one candidate. `predictions` maps question_id to the QA output
// against that candidate. Throws ValidationError naming the question when a
// prediction (or human annotation) is missing.
QAEvalScore ScoreCandidate(const std::vector<QuestionSet>& question_sets,
                           const std::map<std::string, Prediction>& predictions,
                           const Verifier& verifier,
                           Averaging averaging = Averaging::kMacro,
                           std::string_view summarizer_id = "");

struct ScoringOptions {
  Averaging averaging = Averaging::kMacro;
  // Score reference-type candidates only against the other references.
  bool exclude_self_reference = false;
  int parallelism = 1;
  int max_attempts = 2;
};

struct CellScore {
  std::string system;
  std::string instance;
  QAEvalScore score;
};

struct DatasetScores {
  ScoreMatrix em;
  ScoreMatrix f1;
  std::vector<CellScore> cells;  // instance-major, dataset system order
};

DatasetScores ScoreDataset(const EvalDataset& dataset,
                           const std::vector<InstanceQuestions>& questions,
                           QABackend& qa, const Verifier& verifier,
                           const ScoringOptions& options = {});

// Builds question sets with `qg`, then scores.
DatasetScores ScoreDataset(const EvalDataset& dataset,
                           const AnnotationIndex& annotations,
                           Strategy strategy, QGBackend& qg, QABackend& qa,
                           const Verifier& verifier,
                           const ScoringOptions& options = {});

// Per-(system, instance, reference) scores:
// {"entries": [{"system", "instance", "reference", "em", "f1",
//               "num_questions"}]}
nlohmann::json CellScoresToJson(const std::vector<CellScore>& cells);
std::vector<CellScore> CellScoresFromJson(const nlohmann::json& j);

}  // namespace qaeval

#endif  // QAEVAL_SCORING_H_
