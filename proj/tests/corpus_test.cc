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

#include "qaeval/corpus.h"

#include <gtest/gtest.h>

#include <fstream>

#include "qaeval/errors.h"
#include "qaeval/io.h"
#include "qaeval/score_matrix.h"
#include "test_support.h"

namespace qaeval {
namespace {

using nlohmann::json;

json OneInstance() {
  return json::parse(R"({"instances": [{
    "instance_id": "D0801",
    "references": [
      {"summarizer_id": "R1", "text": "Militants attacked churches."},
      {"summarizer_id": "R2", "text": "Churches were attacked."}],
    "candidates": [
      {"summarizer_id": "A", "summarizer_type": "peer", "text": "Attacks."},
      {"summarizer_id": "B", "summarizer_type": "peer", "text": "Churches."}],
    "judgments": {"A": 3.0, "B": 4.5}}]})");
}

std::string ErrorOf(const json& j) {
  try {
    DatasetFromJson(j);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(DatasetTest, LoadsOneInstance) {
  const EvalDataset d = DatasetFromJson(OneInstance());
  EXPECT_EQ(d.num_instances(), 1u);
  EXPECT_EQ(d.num_systems(), 2u);
  EXPECT_EQ(d.instances[0].references.size(), 2u);
  EXPECT_EQ(d.instances[0].judgments.at("B"), 4.5);
  EXPECT_TRUE(d.incomplete_systems.empty());
}

TEST(DatasetTest, DuplicateCandidateCitesInstance) {
  json j = OneInstance();
  j["instances"][0]["candidates"][1]["summarizer_id"] = "A";
  const std::string message = ErrorOf(j);
  EXPECT_NE(message.find("D0801"), std::string::npos) << message;
  EXPECT_NE(message.find("\"A\""), std::string::npos) << message;
}

TEST(DatasetTest, JudgmentForUnknownSystemRejected) {
  json j = OneInstance();
  j["instances"][0]["judgments"]["Z"] = 2.0;
  EXPECT_THROW(DatasetFromJson(j), ValidationError);
}

TEST(DatasetTest, EmptyReferenceRejected) {
  json j = OneInstance();
  j["instances"][0]["references"][0]["text"] = "  ";
  EXPECT_THROW(DatasetFromJson(j), ValidationError);
}

TEST(DatasetTest, EmptyCandidateAllowed) {
  json j = OneInstance();
  j["instances"][0]["candidates"][0]["text"] = "";
  EXPECT_NO_THROW(DatasetFromJson(j));
}

TEST(DatasetTest, BadSummarizerTypeIsFormatError) {
  json j = OneInstance();
  j["instances"][0]["candidates"][0]["summarizer_type"] = "robot";
  EXPECT_THROW(DatasetFromJson(j), FormatError);
}

TEST(DatasetTest, DuplicateInstanceRejected) {
  json j = OneInstance();
  j["instances"].push_back(j["instances"][0]);
  EXPECT_THROW(DatasetFromJson(j), ValidationError);
}

TEST(DatasetTest, InconsistentTypesRejected) {
  json j = OneInstance();
  json second = j["instances"][0];
  second["instance_id"] = "D0802";
  second["candidates"][0]["summarizer_type"] = "reference";
  j["instances"].push_back(second);
  const EvalDataset d = DatasetFromJson(j);
  EXPECT_THROW(d.SystemTypes(), ValidationError);
}

TEST(DatasetTest, IncompleteSystemsTracked) {
  json j = OneInstance();
  json second = j["instances"][0];
  second["instance_id"] = "D0802";
  second["candidates"].erase(1);
  second["judgments"].erase("B");
  j["instances"].push_back(second);
  const EvalDataset d = DatasetFromJson(j);
  EXPECT_EQ(d.incomplete_systems, std::set<std::string>{"B"});
}

TEST(DatasetTest, JsonRoundTrip) {
  const EvalDataset d = DatasetFromJson(OneInstance());
  EXPECT_EQ(DatasetFromJson(DatasetToJson(d)), d);
}

TEST(DatasetTest, MalformedFileReportsLine) {
  testing::TempDir dir;
  const std::string path = dir / "bad.json";
  std::ofstream(path) << "{\n  \"instances\": [\n    oops\n]}";
  try {
    LoadDataset(path);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
}

TEST(JudgmentMatrixTest, TwoSystemsOneInstance) {
  const ScoreMatrix m = JudgmentMatrix(DatasetFromJson(OneInstance()));
  ASSERT_EQ(m.num_systems(), 2u);
  ASSERT_EQ(m.num_instances(), 1u);
  EXPECT_EQ(m.at(0, 0), 3.0);
  EXPECT_EQ(m.at(1, 0), 4.5);
}

TEST(JudgmentMatrixTest, MissingJudgmentIsMissingCell) {
  json j = OneInstance();
  j["instances"][0]["judgments"].erase("A");
  const ScoreMatrix m = JudgmentMatrix(DatasetFromJson(j));
  EXPECT_FALSE(m.at(0, 0).has_value());
  EXPECT_EQ(m.MissingCount(), 1u);
}

TEST(JudgmentMatrixTest, EmptyDataset) {
  const ScoreMatrix m =
      JudgmentMatrix(DatasetFromJson(json::parse(R"({"instances": []})")));
  EXPECT_EQ(m.num_systems(), 0u);
  EXPECT_EQ(m.num_instances(), 0u);
}

TEST(ScoreMatrixTest, SystemMeansIgnoreMissing) {
  ScoreMatrix m = ScoreMatrix::Empty("x", {"A", "B"}, {"i1", "i2"});
  m.at(0, 0) = 1.0;
  m.at(0, 1) = 3.0;
  m.at(1, 1) = 5.0;
  const auto means = m.SystemMeans();
  EXPECT_EQ(means[0], 2.0);
  EXPECT_EQ(means[1], 5.0);
}

TEST(ScoreMatrixTest, JsonRoundTripKeepsMissing) {
  ScoreMatrix m = ScoreMatrix::Empty("x", {"A", "B"}, {"i1"});
  m.at(0, 0) = 0.25;
  EXPECT_EQ(ScoreMatrixFromJson(ScoreMatrixToJson(m)), m);
}

TEST(ScoreMatrixTest, AlignToReordersAndNamesOffenders) {
  ScoreMatrix a = ScoreMatrix::Empty("a", {"A", "B"}, {"i1", "i2"});
  ScoreMatrix b = ScoreMatrix::Empty("b", {"B", "A"}, {"i2", "i1"});
  b.at(0, 0) = 7.0;  // B on i2
  const ScoreMatrix aligned = AlignTo(a, b);
  EXPECT_EQ(aligned.systems, a.systems);
  EXPECT_EQ(aligned.at(1, 1), 7.0);

  ScoreMatrix c = ScoreMatrix::Empty("c", {"A", "Q"}, {"i1", "i2"});
  try {
    AlignTo(a, c);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string message = e.what();
    EXPECT_NE(message.find("Q"), std::string::npos) << message;
    EXPECT_NE(message.find("B"), std::string::npos) << message;
  }
}

TEST(ScoreMatrixTest, NonNumericCellRejected) {
  const json j = json::parse(
      R"({"metric": "m", "systems": ["A"], "instances": ["i"], "values": [["x"]]})");
  EXPECT_THROW(ScoreMatrixFromJson(j), Error);
}

}  // namespace
}  // namespace qaeval
