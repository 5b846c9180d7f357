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

#include "qaeval/scoring.h"

#include <cctype>
#include <unordered_map>

#include "qaeval/errors.h"
#include "qaeval/io.h"
#include "qaeval/text.h"

namespace qaeval {

using nlohmann::json;

namespace {

bool IsArticle(const std::string& token) {
  return token == "a" || token == "an" || token == "the";
}

// Unicode punctuation plus every ASCII symbol SQuAD's normalizer strips.
bool IsStripped(char32_t c) {
  if (c < 0x80 && std::ispunct(static_cast<int>(c))) return true;
  return text::IsPunctuation(c);
}

}  // namespace

std::vector<std::string> NormalizedTokens(std::string_view s) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && !IsArticle(current)) tokens.push_back(current);
    current.clear();
  };
  for (char32_t c : text::Decode(s)) {
    if (text::IsWhitespace(c)) {
      flush();
    } else if (!IsStripped(c)) {
      text::AppendUtf8(text::ToLower(c), current);
    }
  }
  flush();
  return tokens;
}

std::string NormalizeAnswer(std::string_view s) {
  std::string out;
  for (const auto& token : NormalizedTokens(s)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

int EmScore(std::string_view prediction, std::string_view gold) {
  return NormalizeAnswer(prediction) == NormalizeAnswer(gold) ? 1 : 0;
}

double F1Score(std::string_view prediction, std::string_view gold) {
  const auto pred = NormalizedTokens(prediction);
  const auto ref = NormalizedTokens(gold);
  if (pred.empty() || ref.empty()) {
    return pred.empty() && ref.empty() ? 1.0 : 0.0;
  }
  std::unordered_map<std::string, int> counts;
  for (const auto& token : ref) ++counts[token];
  std::size_t overlap = 0;
  for (const auto& token : pred) {
    if (auto it = counts.find(token); it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  // 2PR/(P+R) with P = overlap/|pred|, R = overlap/|ref|.
  return 2.0 * static_cast<double>(overlap) /
         static_cast<double>(pred.size() + ref.size());
}

VerifiedAnswer Verify(const Prediction& prediction, std::string_view gold) {
  VerifiedAnswer v;
  v.question_id = prediction.question_id;
  if (!prediction.answer) return v;
  v.em = EmScore(*prediction.answer, gold);
  v.f1 = F1Score(*prediction.answer, gold);
  return v;
}

HumanAnnotations HumanAnnotationsFromJson(const json& j,
                                          const std::string& source) {
  io::ExpectObject(j, source);
  HumanAnnotations out;
  for (const auto& [key, value] : j.items()) {
    const std::string where = source + "." + key;
    io::ExpectObject(value, where);
    HumanJudgment judgment;
    const json& answerable = io::Field(value, "answerable", where);
    const json& correct = io::Field(value, "correct", where);
    if (!answerable.is_boolean()) {
      throw FormatError(where + ".answerable", "expected boolean");
    }
    if (!correct.is_boolean()) {
      throw FormatError(where + ".correct", "expected boolean");
    }
    judgment.answerable = answerable.get<bool>();
    judgment.correct = correct.get<bool>();
    if (auto it = value.find("human_answer"); it != value.end()) {
      if (it->is_string()) {
        judgment.human_answer = it->get<std::string>();
      } else if (!it->is_null()) {
        throw FormatError(where + ".human_answer", "expected string or null");
      }
    }
    out[key] = std::move(judgment);
  }
  return out;
}

HumanAnnotations LoadHumanAnnotations(const std::string& path) {
  return HumanAnnotationsFromJson(io::ReadJsonFile(path), path);
}

VerifiedAnswer Verifier::operator()(const QAPair& question,
                                    const Prediction& prediction,
                                    std::string_view summarizer_id) const {
  VerifiedAnswer v = Verify(prediction, question.answer_text);
  v.question_id = question.question_id;
  if (!annotations_) return v;
  auto it = annotations_->end();
  if (!summarizer_id.empty()) {
    it = annotations_->find(std::string(summarizer_id) + ":" +
                            question.question_id);
  }
  if (it == annotations_->end()) it = annotations_->find(question.question_id);
  if (it == annotations_->end()) {
    throw ValidationError("no human verification for question \"" +
                          question.question_id + "\"");
  }
  v.human_correct = it->second.correct;
  v.em = it->second.correct ? 1 : 0;
  v.f1 = it->second.correct ? 1.0 : 0.0;
  return v;
}

double MacroAverage(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

QAEvalScore ScoreCandidate(const std::vector<QuestionSet>& question_sets,
                           const std::map<std::string, Prediction>& predictions,
                           const Verifier& verifier, Averaging averaging,
                           std::string_view summarizer_id) {
  QAEvalScore score;
  std::vector<double> ref_em;
  std::vector<double> ref_f1;
  double total_em = 0.0;
  double total_f1 = 0.0;
  std::size_t total_questions = 0;
  for (const auto& set : question_sets) {
    double em_sum = 0.0;
    double f1_sum = 0.0;
    for (const auto& question : set.questions) {
      auto it = predictions.find(question.question_id);
      if (it == predictions.end()) {
        throw ValidationError("no prediction for question \"" +
                              question.question_id + "\"");
      }
      const VerifiedAnswer v = verifier(question, it->second, summarizer_id);
      em_sum += v.em;
      f1_sum += v.f1;
    }
    ReferenceScore ref{set.reference_id, 0.0, 0.0, set.questions.size()};
    if (!set.questions.empty()) {
      const double n = static_cast<double>(set.questions.size());
      ref.em = em_sum / n;
      ref.f1 = f1_sum / n;
      ref_em.push_back(ref.em);
      ref_f1.push_back(ref.f1);
    }
    total_em += em_sum;
    total_f1 += f1_sum;
    total_questions += set.questions.size();
    score.per_reference.push_back(std::move(ref));
  }
  if (averaging == Averaging::kMacro) {
    score.em = MacroAverage(ref_em);
    score.f1 = MacroAverage(ref_f1);
  } else if (total_questions > 0) {
    score.em = total_em / static_cast<double>(total_questions);
    score.f1 = total_f1 / static_cast<double>(total_questions);
  }
  return score;
}

DatasetScores ScoreDataset(const EvalDataset& dataset,
                           const std::vector<InstanceQuestions>& questions,
                           QABackend& qa, const Verifier& verifier,
                           const ScoringOptions& options) {
  std::map<std::string, const InstanceQuestions*> by_instance;
  for (const auto& q : questions) by_instance[q.instance_id] = &q;

  DatasetScores out;
  out.em = ScoreMatrix::Empty("QAEval-EM", dataset.system_ids,
                              dataset.instance_ids());
  out.f1 = ScoreMatrix::Empty("QAEval-F1", dataset.system_ids,
                              dataset.instance_ids());
  for (std::size_t j = 0; j < dataset.instances.size(); ++j) {
    const EvalInstance& instance = dataset.instances[j];
    auto found = by_instance.find(instance.instance_id);
    if (found == by_instance.end()) {
      throw ValidationError("no question set for instance \"" +
                            instance.instance_id + "\"");
    }
    const InstanceQuestions& instance_questions = *found->second;
    for (std::size_t i = 0; i < dataset.system_ids.size(); ++i) {
      const Summary* candidate = instance.FindCandidate(dataset.system_ids[i]);
      if (candidate == nullptr) continue;

      std::vector<QuestionSet> sets;
      for (const auto& set : instance_questions.sets) {
        if (options.exclude_self_reference &&
            candidate->summarizer_type == SummarizerType::kReference &&
            set.reference_id == candidate->summarizer_id) {
          continue;
        }
        sets.push_back(set);
      }

      std::map<std::string, Prediction> predictions;
      if (text::Trim(candidate->text).empty()) {
        // Nothing can be answered from an empty summary.
        for (const auto& set : sets) {
          for (const auto& q : set.questions) {
            predictions[q.question_id] = Prediction{q.question_id, {}, 0.0, 1.0};
          }
        }
      } else {
        std::vector<AnswerItem> items;
        for (const auto& set : sets) {
          for (const auto& q : set.questions) {
            items.push_back({q.question_id, candidate->text, q.question,
                             q.answer_text,
                             candidate->summarizer_id + ":" + q.question_id});
          }
        }
        const auto batch = AnswerBatch(
            qa, items, BatchOptions{options.parallelism, options.max_attempts});
        for (const auto& p : batch) predictions[p.question_id] = p;
      }

      QAEvalScore score = ScoreCandidate(sets, predictions, verifier,
                                         options.averaging,
                                         candidate->summarizer_id);
      out.em.values[i][j] = score.em;
      out.f1.values[i][j] = score.f1;
      out.cells.push_back(
          {candidate->summarizer_id, instance.instance_id, std::move(score)});
    }
  }
  return out;
}

DatasetScores ScoreDataset(const EvalDataset& dataset,
                           const AnnotationIndex& annotations,
                           Strategy strategy, QGBackend& qg, QABackend& qa,
                           const Verifier& verifier,
                           const ScoringOptions& options) {
  const auto questions = BuildDatasetQuestions(dataset, annotations, strategy,
                                               qg, options.parallelism);
  return ScoreDataset(dataset, questions, qa, verifier, options);
}

json CellScoresToJson(const std::vector<CellScore>& cells) {
  json entries = json::array();
  for (const auto& cell : cells) {
    for (const auto& ref : cell.score.per_reference) {
      entries.push_back(json{{"system", cell.system},
                             {"instance", cell.instance},
                             {"reference", ref.reference_id},
                             {"em", ref.em},
                             {"f1", ref.f1},
                             {"num_questions", ref.num_questions}});
    }
  }
  return json{{"entries", std::move(entries)}};
}

std::vector<CellScore> CellScoresFromJson(const json& j) {
  const json& entries = io::Field(j, "entries", "details");
  io::ExpectArray(entries, "details.entries");
  std::vector<CellScore> cells;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string where = "details.entries[" + std::to_string(e) + "]";
    const json& entry = entries[e];
    const std::string system = io::StringField(entry, "system", where);
    const std::string instance = io::StringField(entry, "instance", where);
    ReferenceScore ref;
    ref.reference_id = io::StringField(entry, "reference", where);
    ref.em = io::NumberField(entry, "em", where);
    ref.f1 = io::NumberField(entry, "f1", where);
    ref.num_questions =
        static_cast<std::size_t>(io::IntField(entry, "num_questions", where));
    auto [it, inserted] = index.emplace(std::pair{system, instance}, cells.size());
    if (inserted) cells.push_back({system, instance, {}});
    cells[it->second].score.per_reference.push_back(std::move(ref));
  }
  // Recompute the macro averages from the per-reference values.
  for (auto& cell : cells) {
    std::vector<double> em;
    std::vector<double> f1;
    for (const auto& ref : cell.score.per_reference) {
      if (ref.num_questions == 0) continue;
      em.push_back(ref.em);
      f1.push_back(ref.f1);
    }
    cell.score.em = MacroAverage(em);
    cell.score.f1 = MacroAverage(f1);
  }
  return cells;
}

}  // namespace qaeval
