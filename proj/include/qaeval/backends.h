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

// Question generation (QG) and question answering (QA) backends.
//
// A QG backend turns (sentence, answer span) into a question; a QA backend
// answers a question against a context or declares it unanswerable. Model
// backends live out of process and speak the JSON-lines protocol in
// protocol.h; the two built-in backends here are deterministic stand-ins:
//
//   TemplateQuestionGenerator  replaces the answer with "what"/"who"
//   OracleAnswerer             exact normalized match of the gold answer

#ifndef QAEVAL_BACKENDS_H_
#define QAEVAL_BACKENDS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qaeval/answer_selection.h"
#include "qaeval/corpus.h"

namespace qaeval {

struct QAPair {
  std::string question_id;
  std::string question;
  std::string answer_text;
  AnswerSpan answer_span;
  std::string reference_id;
  std::string instance_id;

  friend bool operator==(const QAPair&, const QAPair&) = default;
};

// Questions generated from one reference summary.
struct QuestionSet {
  std::string reference_id;
  std::vector<QAPair> questions;

  friend bool operator==(const QuestionSet&, const QuestionSet&) = default;
};

struct InstanceQuestions {
  std::string instance_id;
  std::vector<QuestionSet> sets;  // reference order

  friend bool operator==(const InstanceQuestions&,
                         const InstanceQuestions&) = default;
};

struct Prediction {
  std::string question_id;
  std::optional<std::string> answer;  // nullopt = unanswerable
  double score_answer = 0.0;
  double score_null = 0.0;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

// Character offsets are code point indices into `sentence`.
struct QGRequest {
  std::string sentence;
  std::size_t answer_start = 0;
  std::size_t answer_end = 0;
  std::string answer_text;
  std::string answer_label;  // entity label, empty unless NER
};

struct QARequest {
  std::string context;
  std::string question;
  std::optional<std::string> gold;  // metadata for oracle backends only
};

class QGBackend {
 public:
  virtual ~QGBackend() = default;
  // Part of every cache key; two backends with the same name must behave
  // identically.
  virtual std::string name() const = 0;
  virtual std::string Generate(const QGRequest& request,
                               const std::string& request_id) = 0;
};

class QABackend {
 public:
  virtual ~QABackend() = default;
  virtual std::string name() const = 0;
  // The returned prediction's question_id is filled in by the caller.
  virtual Prediction Answer(const QARequest& request,
                            const std::string& request_id) = 0;
};

class TemplateQuestionGenerator : public QGBackend {
 public:
  std::string name() const override { return "template"; }
  std::string Generate(const QGRequest& request,
                       const std::string& request_id) override;
};

// Requires request.gold; throws BackendError without it.
class OracleAnswerer : public QABackend {
 public:
  std::string name() const override { return "oracle"; }
  Prediction Answer(const QARequest& request,
                    const std::string& request_id) override;
};

// Answers from a human annotation file (see scoring.h for the format):
// the human answer when the question was marked answerable, NULL otherwise.
// Looks up "<request_id>" first, then the part after the last ':'.
class HumanAnswerer : public QABackend {
 public:
  HumanAnswerer(std::string name,
                std::map<std::string, std::optional<std::string>> answers)
      : name_(std::move(name)), answers_(std::move(answers)) {}
  std::string name() const override { return name_; }
  Prediction Answer(const QARequest& request,
                    const std::string& request_id) override;

 private:
  std::string name_;
  std::map<std::string, std::optional<std::string>> answers_;
};

// Forces answer to NULL when score_null >= score_answer. Throws BackendError
// on non-finite scores or a NULL answer that the scores say is answerable.
void EnforceArgmax(Prediction& prediction, const std::string& request_id);

// Stable id: hash of instance, reference, sentence index, span and strategy.
std::string QuestionId(std::string_view instance_id,
                       std::string_view reference_id, const AnswerSpan& span);

// Returns the backend's question, with "?" appended if it lacks one.
std::string GenerateQuestion(QGBackend& backend, const std::string& sentence,
                             const AnswerSpan& answer);

// One QAPair per answer, in answer order.
std::vector<QAPair> BuildQuestionSet(
    QGBackend& backend, const std::string& instance_id,
    const Summary& reference, const std::vector<AnnotatedSentence>& sentences,
    const std::vector<AnswerSpan>& answers, int parallelism = 1);

// Questions for every reference of every instance, in dataset order.
std::vector<InstanceQuestions> BuildDatasetQuestions(
    const EvalDataset& dataset, const AnnotationIndex& annotations,
    Strategy strategy, QGBackend& backend, int parallelism = 1);

Prediction AnswerQuestion(QABackend& backend, const std::string& context,
                          const std::string& question,
                          const std::optional<std::string>& gold = {});

struct AnswerItem {
  std::string question_id;
  std::string context;
  std::string question;
  std::optional<std::string> gold;
  // Sent to the backend as the request id; defaults to question_id.
  std::string request_id;
};

struct BatchOptions {
  int parallelism = 1;
  int max_attempts = 2;
};

// One prediction per item, in item order. Throws PreconditionError on
// duplicate question ids or empty context/question, BatchError when some
// items still fail after max_attempts.
std::vector<Prediction> AnswerBatch(QABackend& backend,
                                    std::span<const AnswerItem> items,
                                    const BatchOptions& options = {});

// Question-set file: {"instance_id": str, "question_sets": [{"reference_id":
// str, "questions": [QAPair...]}]}
nlohmann::json InstanceQuestionsToJson(const InstanceQuestions& questions);
InstanceQuestions InstanceQuestionsFromJson(const nlohmann::json& j,
                                            const std::string& source);

}  // namespace qaeval

#endif  // QAEVAL_BACKENDS_H_
