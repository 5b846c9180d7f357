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

#include <gtest/gtest.h>

#include <filesystem>

#include "qaeval/errors.h"
#include "qaeval/io.h"
#include "test_support.h"

namespace qaeval {
namespace {

using testing::MakeSentence;
using testing::MilitantsSentence;

std::vector<std::string> Texts(const std::vector<AnswerSpan>& spans) {
  std::vector<std::string> out;
  for (const auto& s : spans) out.push_back(s.text);
  return out;
}

TEST(SelectNerTest, PassesEntitiesThrough) {
  const auto spans = SelectNer(MilitantsSentence());
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].text, "Baghdad");
  EXPECT_EQ(spans[0].entity_label, "GPE");
  EXPECT_EQ(spans[0].strategy, Strategy::kNer);
}

TEST(SelectNerTest, NoEntities) {
  AnnotatedSentence s = MilitantsSentence();
  s.entities.clear();
  EXPECT_TRUE(SelectNer(s).empty());
}

TEST(SelectNerTest, DuplicateRangesCollapse) {
  AnnotatedSentence s = MilitantsSentence();
  s.entities.push_back({4, 5, "GPE"});
  EXPECT_EQ(SelectNer(s).size(), 1u);
}

TEST(SelectNpChunksTest, HandAnnotatedChunks) {
  EXPECT_EQ(Texts(SelectNpChunks(MilitantsSentence())),
            (std::vector<std::string>{"Militants", "churches in Baghdad"}));
}

TEST(SelectNpChunksTest, NoChunks) {
  AnnotatedSentence s = MilitantsSentence();
  s.noun_chunks.clear();
  EXPECT_TRUE(SelectNpChunks(s).empty());
}

TEST(SelectNpChunksTest, WholeSentenceChunk) {
  AnnotatedSentence s = MilitantsSentence();
  s.noun_chunks = {{0, 5}};
  EXPECT_EQ(Texts(SelectNpChunks(s)),
            std::vector<std::string>{"Militants attacked churches in Baghdad"});
}

TEST(SelectMaxNpsTest, HandBuiltTree) {
  const auto spans = SelectMaxNps(MilitantsSentence());
  EXPECT_EQ(Texts(spans),
            (std::vector<std::string>{"Militants", "churches in Baghdad"}));
  EXPECT_EQ(spans[1].start, 2);
  EXPECT_EQ(spans[1].end, 5);
}

TEST(SelectMaxNpsTest, NominalRootTakesWholeSentence) {
  const AnnotatedSentence s = MakeSentence(
      "The big dog", {{"The", "DET", 2, "det"},
                      {"big", "ADJ", 2, "amod"},
                      {"dog", "NOUN", -1, "root"}});
  EXPECT_EQ(Texts(SelectMaxNps(s)), std::vector<std::string>{"The big dog"});
}

TEST(SelectMaxNpsTest, NoNominals) {
  const AnnotatedSentence s = MakeSentence(
      "Run quickly", {{"Run", "VERB", -1, "root"}, {"quickly", "ADV", 0, "advmod"}});
  EXPECT_TRUE(SelectMaxNps(s).empty());
}

TEST(SelectMaxNpsTest, DoesNotDescendIntoNominals) {
  // "saw [the man with [a telescope]]": only the outer phrase is maximal.
  const AnnotatedSentence s = MakeSentence(
      "I saw the man with a telescope",
      {{"I", "PRON", 1, "nsubj"},
       {"saw", "VERB", -1, "root"},
       {"the", "DET", 3, "det"},
       {"man", "NOUN", 1, "obj"},
       {"with", "ADP", 6, "case"},
       {"a", "DET", 6, "det"},
       {"telescope", "NOUN", 3, "nmod"}});
  EXPECT_EQ(Texts(SelectMaxNps(s)),
            (std::vector<std::string>{"I", "the man with a telescope"}));
}

TEST(SelectMaxNpsTest, CharOffsetsIndexRenderedText) {
  const auto spans = SelectMaxNps(MilitantsSentence());
  EXPECT_EQ(spans[1].char_start, 19u);
  EXPECT_EQ(spans[1].char_end, 38u);
}

TEST(AnnotatedSentenceTest, RejectsCycle) {
  AnnotatedSentence s = MilitantsSentence();
  s.tokens[1].head = 0;
  s.tokens[0].head = 1;
  s.tokens[2].head = -1;  // root elsewhere; 0 and 1 form a cycle
  EXPECT_THROW(s.Validate(), AnnotationError);
}

TEST(AnnotatedSentenceTest, RejectsTwoRoots) {
  AnnotatedSentence s = MilitantsSentence();
  s.tokens[0].head = -1;
  EXPECT_THROW(s.Validate(), AnnotationError);
}

TEST(AnnotatedSentenceTest, RejectsSpanOutOfRange) {
  AnnotatedSentence s = MilitantsSentence();
  s.noun_chunks.push_back({3, 9});
  EXPECT_THROW(s.Validate(), AnnotationError);
}

TEST(AnnotatedSentenceTest, RenderedTextFallsBackToTokens) {
  AnnotatedSentence s = MilitantsSentence();
  s.text = "something unrelated";
  EXPECT_EQ(s.RenderedText(), "Militants attacked churches in Baghdad");
}

TEST(SelectAnswersTest, ConcatenatesSentences) {
  const auto [summary, sentences] =
      testing::FlatReference("R1", 2, 3, 0);
  auto two = sentences;
  two[1].noun_chunks.pop_back();
  Summary s = summary;
  const auto spans = SelectAnswers(s, two, Strategy::kNpChunks);
  ASSERT_EQ(spans.size(), 5u);
  EXPECT_EQ(spans[0].sentence_index, 0);
  EXPECT_EQ(spans[4].sentence_index, 1);
}

TEST(SelectAnswersTest, EmptyAnnotationYieldsNothing) {
  Summary s{"R", SummarizerType::kReference, "x", std::nullopt};
  s.text = "";
  EXPECT_TRUE(SelectAnswers(s, {}, Strategy::kNpChunks).empty());
}

TEST(SelectAnswersTest, MisalignedAnnotationRejected) {
  const auto [summary, sentences] = testing::FlatReference("R1", 2, 2, 0);
  Summary s = summary;
  s.sentences.reset();
  s.text = "A different reference entirely.";
  EXPECT_THROW(SelectAnswers(s, sentences, Strategy::kNpChunks),
               ValidationError);
}

TEST(StrategyTest, ParseIsCaseInsensitive) {
  EXPECT_EQ(ParseStrategy("np_chunks"), Strategy::kNpChunks);
  EXPECT_EQ(ParseStrategy("MAX_NP"), Strategy::kMaxNp);
  EXPECT_EQ(ParseStrategy("ner"), Strategy::kNer);
  EXPECT_THROW(ParseStrategy("verbs"), PreconditionError);
}

TEST(AnnotationIoTest, RoundTripAndDirectoryLoad) {
  testing::TempDir dir;
  const auto [summary, sentences] = testing::FlatReference("R/1", 1, 2, 0);
  ReferenceAnnotation annotation{"R/1", sentences};
  const auto j = AnnotationToJson(annotation);
  const ReferenceAnnotation back = AnnotationFromJson(j, "test");
  EXPECT_EQ(back.sentences, sentences);

  EvalInstance instance;
  instance.instance_id = "D1";
  instance.references = {summary};
  instance.candidates = {Summary{"A", SummarizerType::kPeer, "text", {}}};
  const EvalDataset dataset = BuildDataset({instance});

  try {
    LoadAnnotationDir(dir.path().string(), dataset);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("D1/R/1"), std::string::npos)
        << e.what();
  }

  const auto path = dir.path() / "D1" / (EscapePathComponent("R/1") + ".json");
  std::filesystem::create_directories(path.parent_path());
  io::WriteFileAtomic(path.string(), io::DumpJson(j));
  const AnnotationIndex index = LoadAnnotationDir(dir.path().string(), dataset);
  EXPECT_EQ(index.at({"D1", "R/1"}), sentences);
}

TEST(EscapePathComponentTest, EscapesUnsafeCharacters) {
  EXPECT_EQ(EscapePathComponent("a/b c"), "a%2Fb%20c");
  EXPECT_EQ(EscapePathComponent("D0801-A_1.x"), "D0801-A_1.x");
}

}  // namespace
}  // namespace qaeval
