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

#include "qaeval/backends.h"

#include <cmath>
#include <set>

#include "qaeval/cache.h"
#include "qaeval/errors.h"
#include "qaeval/io.h"
#include "qaeval/parallel.h"
#include "qaeval/protocol.h"
#include "qaeval/scoring.h"
#include "qaeval/text.h"

namespace qaeval {

using nlohmann::json;

namespace {

bool IsPersonLabel(std::string_view label) {
  return label == "PERSON" || label == "PER";
}

// Trims leading and trailing punctuation code points.
std::string TrimPunctuation(std::string_view s) {
  std::u32string cps = text::Decode(s);
  std::size_t begin = 0;
  std::size_t end = cps.size();
  while (begin < end && text::IsPunctuation(cps[begin])) ++begin;
  while (end > begin && text::IsPunctuation(cps[end - 1])) --end;
  return text::Encode(std::u32string_view(cps).substr(begin, end - begin));
}

std::string ShortHash(std::string_view material) {
  return Sha256Hex(material).substr(0, 16);
}

json AnswerSpanToJson(const AnswerSpan& span) {
  json j{{"sentence_index", span.sentence_index},
         {"start", span.start},
         {"end", span.end},
         {"text", span.text},
         {"strategy", std::string(StrategyName(span.strategy))},
         {"char_start", span.char_start},
         {"char_end", span.char_end}};
  if (!span.entity_label.empty()) j["label"] = span.entity_label;
  return j;
}

AnswerSpan AnswerSpanFromJson(const json& j, const std::string& where) {
  AnswerSpan span;
  span.sentence_index = io::IntField(j, "sentence_index", where);
  span.start = io::IntField(j, "start", where);
  span.end = io::IntField(j, "end", where);
  span.text = io::StringField(j, "text", where);
  span.strategy = ParseStrategy(io::StringField(j, "strategy", where));
  span.char_start = static_cast<std::size_t>(io::IntField(j, "char_start", where));
  span.char_end = static_cast<std::size_t>(io::IntField(j, "char_end", where));
  if (j.contains("label")) span.entity_label = io::StringField(j, "label", where);
  return span;
}

}  // namespace

std::string TemplateQuestionGenerator::Generate(const QGRequest& request,
                                                const std::string& request_id) {
  const auto begin =
      text::CodePointToByteOffset(request.sentence, request.answer_start);
  const auto end =
      text::CodePointToByteOffset(request.sentence, request.answer_end);
  if (!begin || !end || *begin >= *end) {
    throw BackendError(request_id, "answer offsets outside the sentence");
  }
  std::string question = request.sentence.substr(0, *begin);
  question += IsPersonLabel(request.answer_label) ? "who" : "what";
  question += request.sentence.substr(*end);
  question = text::Trim(question);
  if (!question.empty() && question.back() == '.') question.pop_back();
  question = text::Trim(question);
  question += "?";
  return text::CapitalizeFirst(question);
}

Prediction OracleAnswerer::Answer(const QARequest& request,
                                  const std::string& request_id) {
  if (!request.gold) {
    throw BackendError(request_id, "oracle backend needs the gold answer");
  }
  const std::vector<std::string> gold = NormalizedTokens(*request.gold);

  // A whitespace piece normalizes to at most one token, so each normalized
  // context token can point back at the piece it came from.
  const auto pieces = text::SplitWhitespace(request.context);
  std::vector<std::string> tokens;
  std::vector<std::size_t> owner;
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    for (auto& token : NormalizedTokens(pieces[p].text)) {
      tokens.push_back(std::move(token));
      owner.push_back(p);
    }
  }

  Prediction prediction;
  if (gold.empty()) {
    prediction.answer = "";
  } else {
    for (std::size_t i = 0; i + gold.size() <= tokens.size(); ++i) {
      if (!std::equal(gold.begin(), gold.end(), tokens.begin() + i)) continue;
      const auto& first = pieces[owner[i]];
      const auto& last = pieces[owner[i + gold.size() - 1]];
      prediction.answer = TrimPunctuation(std::string_view(request.context)
                                              .substr(first.byte_begin,
                                                      last.byte_end -
                                                          first.byte_begin));
      break;
    }
  }
  prediction.score_answer = prediction.answer ? 1.0 : 0.0;
  prediction.score_null = prediction.answer ? 0.0 : 1.0;
  return prediction;
}

Prediction HumanAnswerer::Answer(const QARequest& /*request*/,
                                 const std::string& request_id) {
  auto it = answers_.find(request_id);
  if (it == answers_.end()) {
    const auto colon = request_id.rfind(':');
    if (colon != std::string::npos) {
      it = answers_.find(request_id.substr(colon + 1));
    }
  }
  if (it == answers_.end()) {
    throw BackendError(request_id, "no human answer for this question");
  }
  Prediction prediction;
  prediction.answer = it->second;
  prediction.score_answer = it->second ? 1.0 : 0.0;
  prediction.score_null = it->second ? 0.0 : 1.0;
  return prediction;
}

void EnforceArgmax(Prediction& prediction, const std::string& request_id) {
  if (!std::isfinite(prediction.score_answer) ||
      !std::isfinite(prediction.score_null)) {
    throw BackendError(request_id, "non-finite answer scores");
  }
  if (prediction.score_null >= prediction.score_answer) {
    prediction.answer.reset();
  } else if (!prediction.answer) {
    throw BackendError(request_id,
                       "NULL answer although score_answer > score_null");
  }
}

std::string QuestionId(std::string_view instance_id,
                       std::string_view reference_id, const AnswerSpan& span) {
  std::string material;
  material.append(instance_id).push_back('\x1f');
  material.append(reference_id).push_back('\x1f');
  material += std::to_string(span.sentence_index) + '\x1f' +
              std::to_string(span.start) + '\x1f' + std::to_string(span.end) +
              '\x1f';
  material.append(StrategyName(span.strategy));
  return ShortHash(material);
}

std::string GenerateQuestion(QGBackend& backend, const std::string& sentence,
                             const AnswerSpan& answer) {
  const std::size_t length = text::CodePointCount(sentence);
  if (answer.char_start >= answer.char_end || answer.char_end > length) {
    throw PreconditionError("answer \"" + answer.text +
                            "\" does not lie within the sentence");
  }
  QGRequest request;
  request.sentence = sentence;
  request.answer_start = answer.char_start;
  request.answer_end = answer.char_end;
  request.answer_text = answer.text;
  request.answer_label = answer.entity_label;
  const std::string request_id =
      "qg-" + ShortHash(protocol::GenerateBody(request).dump());
  std::string question = text::Trim(backend.Generate(request, request_id));
  if (question.empty()) {
    throw BackendError(request_id, "backend returned an empty question");
  }
  if (question.back() != '?') question += "?";
  return question;
}

std::vector<QAPair> BuildQuestionSet(
    QGBackend& backend, const std::string& instance_id,
    const Summary& reference, const std::vector<AnnotatedSentence>& sentences,
    const std::vector<AnswerSpan>& answers, int parallelism) {
  std::vector<QAPair> pairs(answers.size());
  std::set<std::string> ids;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    const AnswerSpan& span = answers[i];
    if (span.sentence_index < 0 ||
        span.sentence_index >= static_cast<int>(sentences.size())) {
      throw PreconditionError("answer \"" + span.text +
                              "\" refers to a missing sentence");
    }
    if (span.text.empty()) {
      throw PreconditionError("empty answer text in reference \"" +
                              reference.summarizer_id + "\"");
    }
    QAPair& pair = pairs[i];
    pair.question_id = QuestionId(instance_id, reference.summarizer_id, span);
    if (!ids.insert(pair.question_id).second) {
      throw PreconditionError("duplicate answer span in reference \"" +
                              reference.summarizer_id + "\"");
    }
    pair.answer_text = span.text;
    pair.answer_span = span;
    pair.reference_id = reference.summarizer_id;
    pair.instance_id = instance_id;
  }
  ParallelFor(answers.size(), parallelism, [&](std::size_t i) {
    const auto& sentence = sentences[answers[i].sentence_index];
    pairs[i].question =
        GenerateQuestion(backend, sentence.RenderedText(), answers[i]);
  });
  return pairs;
}

std::vector<InstanceQuestions> BuildDatasetQuestions(
    const EvalDataset& dataset, const AnnotationIndex& annotations,
    Strategy strategy, QGBackend& backend, int parallelism) {
  std::vector<InstanceQuestions> out;
  for (const auto& instance : dataset.instances) {
    InstanceQuestions questions;
    questions.instance_id = instance.instance_id;
    for (const auto& ref : instance.references) {
      auto it = annotations.find({instance.instance_id, ref.summarizer_id});
      if (it == annotations.end()) {
        throw ValidationError("missing annotations for " +
                              instance.instance_id + "/" + ref.summarizer_id);
      }
      const auto answers = SelectAnswers(ref, it->second, strategy);
      questions.sets.push_back(
          {ref.summarizer_id,
           BuildQuestionSet(backend, instance.instance_id, ref, it->second,
                            answers, parallelism)});
    }
    out.push_back(std::move(questions));
  }
  return out;
}

Prediction AnswerQuestion(QABackend& backend, const std::string& context,
                          const std::string& question,
                          const std::optional<std::string>& gold) {
  AnswerItem item{"q", context, question, gold, ""};
  return AnswerBatch(backend, std::span<const AnswerItem>(&item, 1)).front();
}

std::vector<Prediction> AnswerBatch(QABackend& backend,
                                    std::span<const AnswerItem> items,
                                    const BatchOptions& options) {
  std::set<std::string> ids;
  for (const auto& item : items) {
    if (!ids.insert(item.question_id).second) {
      throw PreconditionError("duplicate question_id \"" + item.question_id +
                              "\" in batch");
    }
    if (text::Trim(item.context).empty() || text::Trim(item.question).empty()) {
      throw PreconditionError("empty context or question for \"" +
                              item.question_id + "\"");
    }
  }

  std::vector<Prediction> predictions(items.size());
  std::vector<std::string> failures(items.size());
  ParallelFor(items.size(), options.parallelism, [&](std::size_t i) {
    const AnswerItem& item = items[i];
    const std::string request_id =
        item.request_id.empty() ? item.question_id : item.request_id;
    QARequest request{item.context, item.question, item.gold};
    for (int attempt = 1;; ++attempt) {
      try {
        Prediction p = backend.Answer(request, request_id);
        EnforceArgmax(p, request_id);
        p.question_id = item.question_id;
        predictions[i] = std::move(p);
        return;
      } catch (const BackendError& e) {
        if (attempt >= std::max(1, options.max_attempts)) {
          failures[i] = e.what();
          return;
        }
      }
    }
  });

  std::vector<std::string> failed_ids;
  std::string first_failure;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (failures[i].empty()) continue;
    if (failed_ids.empty()) first_failure = failures[i];
    failed_ids.push_back(items[i].question_id);
  }
  if (!failed_ids.empty()) throw BatchError(failed_ids, first_failure);
  return predictions;
}

json InstanceQuestionsToJson(const InstanceQuestions& questions) {
  json sets = json::array();
  for (const auto& set : questions.sets) {
    json items = json::array();
    for (const auto& q : set.questions) {
      items.push_back(json{{"question_id", q.question_id},
                           {"question", q.question},
                           {"answer_text", q.answer_text},
                           {"answer_span", AnswerSpanToJson(q.answer_span)}});
    }
    sets.push_back(
        json{{"reference_id", set.reference_id}, {"questions", std::move(items)}});
  }
  return json{{"instance_id", questions.instance_id},
              {"question_sets", std::move(sets)}};
}

InstanceQuestions InstanceQuestionsFromJson(const json& j,
                                            const std::string& source) {
  InstanceQuestions out;
  out.instance_id = io::StringField(j, "instance_id", source);
  const json& sets = io::Field(j, "question_sets", source);
  io::ExpectArray(sets, source + ".question_sets");
  std::set<std::string> ids;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const std::string where =
        source + ".question_sets[" + std::to_string(s) + "]";
    QuestionSet set;
    set.reference_id = io::StringField(sets[s], "reference_id", where);
    const json& items = io::Field(sets[s], "questions", where);
    io::ExpectArray(items, where + ".questions");
    for (std::size_t q = 0; q < items.size(); ++q) {
      const std::string qw = where + ".questions[" + std::to_string(q) + "]";
      QAPair pair;
      pair.question_id = io::StringField(items[q], "question_id", qw);
      pair.question = io::StringField(items[q], "question", qw);
      pair.answer_text = io::StringField(items[q], "answer_text", qw);
      if (items[q].contains("answer_span")) {
        pair.answer_span =
            AnswerSpanFromJson(items[q]["answer_span"], qw + ".answer_span");
      }
      pair.reference_id = set.reference_id;
      pair.instance_id = out.instance_id;
      if (pair.answer_text.empty()) {
        throw ValidationError(qw + ": empty answer_text");
      }
      if (pair.question.empty() || pair.question.back() != '?') {
        throw ValidationError(qw + ": question must end with \"?\"");
      }
      if (!ids.insert(pair.question_id).second) {
        throw ValidationError(qw + ": duplicate question_id \"" +
                              pair.question_id + "\"");
      }
      set.questions.push_back(std::move(pair));
    }
    out.sets.push_back(std::move(set));
  }
  return out;
}

}  // namespace qaeval
