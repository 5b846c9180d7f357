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

#include <gtest/gtest.h>

#include <memory>
#include <random>

#include "oracles.h"
#include "qaeval/backends.h"
#include "qaeval/errors.h"
#include "qaeval/text.h"

namespace qaeval {
namespace {

TEST(TextTest, DecodeEncodeRoundTrip) {
  const std::string s = "caf\xC3\xA9 \xE4\xB8\xAD \xF0\x9F\x98\x80";
  EXPECT_EQ(text::Encode(text::Decode(s)), s);
  EXPECT_EQ(text::CodePointCount(s), 8u);
}

TEST(TextTest, InvalidUtf8IsReplacedNotFatal) {
  const std::string bad = "a\xFF" "b";
  EXPECT_EQ(text::CodePointCount(bad), 3u);
}

TEST(TextTest, DetokenizeAttachesClosingPunctuation) {
  const std::vector<std::string> tokens = {"He", "did", "n't", "go", "."};
  EXPECT_EQ(text::Detokenize(tokens), "He didn't go.");
}

TEST(TextTest, CapitalizeFirstHandlesMultibyte) {
  EXPECT_EQ(text::CapitalizeFirst("\xC3\xA9t\xC3\xA9"), "\xC3\x89t\xC3\xA9");
  EXPECT_EQ(text::CapitalizeFirst(""), "");
}

TEST(NormalizeAnswerTest, Examples) {
  EXPECT_EQ(NormalizeAnswer("The attacks."), "attacks");
  EXPECT_EQ(NormalizeAnswer(""), "");
  EXPECT_EQ(NormalizeAnswer("An  Iraqi   church"), "iraqi church");
}

TEST(NormalizeAnswerTest, ArticlesOnlyAsWholeTokens) {
  EXPECT_EQ(NormalizeAnswer("theater an a"), "theater");
  EXPECT_EQ(NormalizeAnswer("Anthem"), "anthem");
}

TEST(NormalizeAnswerTest, PunctuationDeletedInsideTokens) {
  EXPECT_EQ(NormalizeAnswer("state-of-the-art"), "stateoftheart");
  EXPECT_EQ(NormalizeAnswer("$5 +3"), "5 3");
  EXPECT_EQ(NormalizeAnswer("\xE2\x80\x9CQuoted\xE2\x80\x9D"), "quoted");
}

TEST(NormalizeAnswerTest, UnicodeWhitespaceSplits) {
  EXPECT_EQ(NormalizeAnswer("new\xC2\xA0york"), "new york");
}

TEST(EmScoreTest, Examples) {
  EXPECT_EQ(EmScore("Baghdad", "baghdad."), 1);
  EXPECT_EQ(EmScore("church attacks", "attacks on churches"), 0);
  EXPECT_EQ(EmScore("the novelist", "novelist"), 1);
}

TEST(F1ScoreTest, WorkedCase) {
  // P = 1/2, R = 1/3.
  EXPECT_EQ(F1Score("church attacks", "attacks on churches"), 0.4);
}

TEST(F1ScoreTest, IdentityAndEmptySides) {
  EXPECT_EQ(F1Score("anything at all", "anything at all"), 1.0);
  EXPECT_EQ(F1Score("", "answer"), 0.0);
  EXPECT_EQ(F1Score("answer", ""), 0.0);
  EXPECT_EQ(F1Score("", ""), 1.0);
  EXPECT_EQ(F1Score("the", "a"), 1.0);  // both normalize to nothing
}

TEST(F1ScoreTest, MultisetOverlap) {
  // pred {x, x, y}, gold {x, y, y}: overlap 2.
  EXPECT_DOUBLE_EQ(F1Score("x x y", "x y y"), 2.0 * 2 / 6);
}

TEST(ScoringOracleTest, RandomPairsAgreeExactly) {
  std::mt19937_64 rng(20260101);
  for (int i = 0; i < 500; ++i) {
    const std::string a = oracle::RandomAnswer(rng);
    const std::string b = i % 5 == 0 ? a + "." : oracle::RandomAnswer(rng);
    ASSERT_EQ(NormalizeAnswer(a), oracle::Normalize(a)) << a;
    ASSERT_EQ(EmScore(a, b), oracle::Em(a, b)) << a << " | " << b;
    ASSERT_EQ(F1Score(a, b), oracle::F1(a, b)) << a << " | " << b;
  }
}

TEST(VerifyTest, NullPredictionScoresZero) {
  Prediction p{"q1", std::nullopt, 0.0, 1.0};
  const VerifiedAnswer v = Verify(p, "Baghdad");
  EXPECT_EQ(v.em, 0);
  EXPECT_EQ(v.f1, 0.0);
}

TEST(VerifyTest, Examples) {
  EXPECT_EQ(Verify({"q", "Baghdad", 1, 0}, "Baghdad").em, 1);
  EXPECT_EQ(Verify({"q", "Baghdad", 1, 0}, "Baghdad").f1, 1.0);
  const VerifiedAnswer v = Verify({"q", "church attacks", 1, 0},
                                  "attacks on churches");
  EXPECT_EQ(v.em, 0);
  EXPECT_EQ(v.f1, 0.4);
}

QAPair Pair(const std::string& id, const std::string& ref,
            const std::string& gold) {
  QAPair p;
  p.question_id = id;
  p.question = "What?";
  p.answer_text = gold;
  p.reference_id = ref;
  p.instance_id = "i";
  return p;
}

Prediction Answered(const std::string& id, const std::string& answer) {
  return Prediction{id, answer, 1.0, 0.0};
}

TEST(ScoreCandidateTest, MacroAverageOverReferences) {
  std::vector<QuestionSet> sets = {
      {"A", {Pair("a1", "A", "x"), Pair("a2", "A", "y"), Pair("a3", "A", "z")}},
      {"B", {Pair("b1", "B", "u"), Pair("b2", "B", "v")}}};
  std::map<std::string, Prediction> predictions = {
      {"a1", Answered("a1", "x")}, {"a2", Answered("a2", "wrong")},
      {"a3", Answered("a3", "z")}, {"b1", Answered("b1", "u")},
      {"b2", Answered("b2", "v")}};
  const QAEvalScore score =
      ScoreCandidate(sets, predictions, Verifier::Automatic());
  ASSERT_EQ(score.per_reference.size(), 2u);
  EXPECT_DOUBLE_EQ(score.per_reference[0].em, 2.0 / 3.0);
  EXPECT_EQ(score.per_reference[1].em, 1.0);
  EXPECT_DOUBLE_EQ(score.em, 5.0 / 6.0);
}

TEST(ScoreCandidateTest, MicroAverageWeightsByQuestions) {
  std::vector<QuestionSet> sets = {
      {"A", {Pair("a1", "A", "x"), Pair("a2", "A", "y"), Pair("a3", "A", "z")}},
      {"B", {Pair("b1", "B", "u"), Pair("b2", "B", "v")}}};
  std::map<std::string, Prediction> predictions = {
      {"a1", Answered("a1", "x")}, {"a2", Answered("a2", "wrong")},
      {"a3", Answered("a3", "z")}, {"b1", Answered("b1", "u")},
      {"b2", Answered("b2", "v")}};
  const QAEvalScore score = ScoreCandidate(sets, predictions,
                                           Verifier::Automatic(),
                                           Averaging::kMicro);
  EXPECT_DOUBLE_EQ(score.em, 4.0 / 5.0);
}

TEST(ScoreCandidateTest, AllNullScoresZero) {
  std::vector<QuestionSet> sets = {{"A", {Pair("a1", "A", "x")}}};
  std::map<std::string, Prediction> predictions = {
      {"a1", Prediction{"a1", std::nullopt, 0, 1}}};
  const QAEvalScore score =
      ScoreCandidate(sets, predictions, Verifier::Automatic());
  EXPECT_EQ(score.em, 0.0);
  EXPECT_EQ(score.f1, 0.0);
}

TEST(ScoreCandidateTest, ReferenceWithoutQuestionsIsLeftOut) {
  std::vector<QuestionSet> sets = {{"A", {Pair("a1", "A", "x")}}, {"B", {}}};
  std::map<std::string, Prediction> predictions = {{"a1", Answered("a1", "x")}};
  const QAEvalScore score =
      ScoreCandidate(sets, predictions, Verifier::Automatic());
  EXPECT_EQ(score.em, 1.0);
}

TEST(ScoreCandidateTest, MissingPredictionIsAnError) {
  std::vector<QuestionSet> sets = {{"A", {Pair("a1", "A", "x")}}};
  EXPECT_THROW(ScoreCandidate(sets, {}, Verifier::Automatic()), Error);
}

TEST(HumanVerifierTest, UsesJudgmentsInsteadOfStringMatch) {
  auto annotations = std::make_shared<HumanAnnotations>();
  (*annotations)["a1"] = HumanJudgment{true, "x", true};
  (*annotations)["sys:a2"] = HumanJudgment{true, "y", false};
  const Verifier verifier = Verifier::Human(annotations);
  const VerifiedAnswer v1 =
      verifier(Pair("a1", "A", "x"), Answered("a1", "totally different"), "sys");
  EXPECT_EQ(v1.em, 1);
  EXPECT_EQ(v1.f1, 1.0);
  const VerifiedAnswer v2 =
      verifier(Pair("a2", "A", "y"), Answered("a2", "y"), "sys");
  EXPECT_EQ(v2.em, 0);
}

TEST(HumanVerifierTest, MissingJudgmentIsAnError) {
  const Verifier verifier =
      Verifier::Human(std::make_shared<HumanAnnotations>());
  EXPECT_THROW(verifier(Pair("a1", "A", "x"), Answered("a1", "x"), "s"),
               Error);
}

TEST(HumanAnnotationsTest, ParsesFile) {
  const auto j = nlohmann::json::parse(R"({
      "q1": {"answerable": true, "human_answer": "x", "correct": true},
      "q2": {"answerable": false, "human_answer": null, "correct": false}})");
  const HumanAnnotations a = HumanAnnotationsFromJson(j, "test");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.at("q1").correct);
  EXPECT_FALSE(a.at("q2").human_answer.has_value());
}

}  // namespace
}  // namespace qaeval
