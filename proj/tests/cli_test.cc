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

#include <gtest/gtest.h>
#include <stdlib.h>
#include <sys/wait.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qaeval/cli/commands.h"
#include "qaeval/cli/config.h"
#include "qaeval/errors.h"
#include "qaeval/io.h"
#include "test_support.h"

#ifndef QAEVAL_BINARY
#error "QAEVAL_BINARY must name the qaeval executable"
#endif
#ifndef QAEVAL_TEST_WORKER
#error "QAEVAL_TEST_WORKER must name the test worker executable"
#endif

namespace qaeval::cli {
namespace {

using nlohmann::json;
using testing::CorpusSpec;
using testing::TempDir;

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const std::string& value) : name_(name) {
    if (const char* old = getenv(name)) old_ = old;
    setenv(name, value.c_str(), 1);
  }
  ~ScopedEnv() {
    if (old_) {
      setenv(name_, old_->c_str(), 1);
    } else {
      unsetenv(name_);
    }
  }

 private:
  const char* name_;
  std::optional<std::string> old_;
};

TEST(ConfigTest, PrecedenceFlagEnvFileDefault) {
  TempDir dir;
  const std::string file = dir / "config.json";
  io::WriteFileAtomic(file, R"({"cache_dir": "from-file", "seed": 9,
                                "parallelism": 3})");
  unsetenv(kCacheDirEnv);

  ConfigOverrides overrides;
  EXPECT_EQ(ResolveConfig(overrides).cache_dir, ".qaeval-cache");

  overrides.config_file = file;
  RunConfig config = ResolveConfig(overrides);
  EXPECT_EQ(config.cache_dir, "from-file");
  EXPECT_EQ(config.seed, 9u);
  EXPECT_EQ(config.parallelism, 3);

  ScopedEnv env(kCacheDirEnv, "from-env");
  EXPECT_EQ(ResolveConfig(overrides).cache_dir, "from-env");

  overrides.cache_dir = "from-flag";
  overrides.seed = 4;
  config = ResolveConfig(overrides);
  EXPECT_EQ(config.cache_dir, "from-flag");
  EXPECT_EQ(config.seed, 4u);
  EXPECT_EQ(config.parallelism, 3);
}

TEST(ConfigTest, UnknownKeyRejected) {
  TempDir dir;
  const std::string file = dir / "config.json";
  io::WriteFileAtomic(file, R"({"cache_directory": "x"})");
  ConfigOverrides overrides;
  overrides.config_file = file;
  EXPECT_THROW(ResolveConfig(overrides), FormatError);
}

TEST(ConfigTest, HashTracksEveryField) {
  RunConfig a;
  RunConfig b;
  EXPECT_EQ(a.Hash(), b.Hash());
  b.seed = 1;
  EXPECT_NE(a.Hash(), b.Hash());
}

TEST(ConfigTest, ValidateRejectsBadValues) {
  RunConfig config;
  config.parallelism = 0;
  EXPECT_THROW(ValidateConfig(config, false, false, false), ValidationError);
  config = RunConfig{};
  config.dataset = "/nonexistent/dataset.json";
  EXPECT_THROW(ValidateConfig(config, true, false, false), ValidationError);
  config = RunConfig{};
  config.verifier = "crowd";
  EXPECT_THROW(ValidateConfig(config, false, false, false), ValidationError);
}

// Corpus plus a config pointing into a fresh directory.
class PipelineTest : public ::testing::Test {
 protected:
  void Build(const CorpusSpec& spec) {
    dataset_ = testing::WriteCorpus(dir_.path(), spec);
    config_.dataset = dir_ / "dataset.json";
    config_.annotations_dir = dir_ / "annotations";
    config_.questions_dir = dir_ / "questions";
    config_.output_dir = dir_ / "out";
    config_.cache_dir = dir_ / "cache";
    std::filesystem::create_directories(config_.output_dir);
  }
  void RunPipeline() {
    std::ostringstream log;
    CmdQuestions(config_, log);
    CmdScore(config_, log);
  }
  ScoreMatrix Matrix(const char* name) {
    return LoadScoreMatrix(
        (std::filesystem::path(config_.output_dir) / name).string());
  }
  std::string Out(const char* name) {
    return io::ReadFile(
        (std::filesystem::path(config_.output_dir) / name).string());
  }

  TempDir dir_;
  RunConfig config_;
  EvalDataset dataset_;
};

TEST_F(PipelineTest, CandidatesEqualToReferenceScoreOne) {
  Build({3, 1, 3, 2, true});
  RunPipeline();
  const ScoreMatrix em = Matrix(kEmMatrixFile);
  const std::size_t h = *em.SystemIndex("H");
  for (std::size_t i = 0; i < em.num_instances(); ++i) {
    EXPECT_EQ(em.at(h, i), 1.0);
  }
}

TEST_F(PipelineTest, EmptyCandidateScoresZero) {
  Build({3, 2, 3, 2, true});
  RunPipeline();
  const ScoreMatrix em = Matrix(kEmMatrixFile);
  const ScoreMatrix f1 = Matrix(kF1MatrixFile);
  const std::size_t p0 = *em.SystemIndex("P0");
  for (std::size_t i = 0; i < em.num_instances(); ++i) {
    EXPECT_EQ(em.at(p0, i), 0.0);
    EXPECT_EQ(f1.at(p0, i), 0.0);
  }
}

TEST_F(PipelineTest, PartialCopiesScoreTheirFraction) {
  Build({2, 2, 4, 2, false});
  RunPipeline();
  const ScoreMatrix em = Matrix(kEmMatrixFile);
  for (int k = 0; k < 4; ++k) {
    const std::size_t s = *em.SystemIndex("P" + std::to_string(k));
    for (std::size_t i = 0; i < em.num_instances(); ++i) {
      EXPECT_DOUBLE_EQ(*em.at(s, i), k / 4.0);
    }
  }
}

TEST_F(PipelineTest, RerunIsByteIdentical) {
  Build({3, 2, 3, 2, true});
  RunPipeline();
  const std::string em = Out(kEmMatrixFile);
  const std::string details = Out(kDetailsFile);
  RunPipeline();
  EXPECT_EQ(Out(kEmMatrixFile), em);
  EXPECT_EQ(Out(kDetailsFile), details);
  EXPECT_NE(em.find("\"provenance\""), std::string::npos);
  EXPECT_NE(em.find(kToolkitVersion), std::string::npos);
}

TEST_F(PipelineTest, MissingQuestionFilesNamed) {
  Build({2, 1, 2, 2, false});
  std::filesystem::create_directories(config_.questions_dir);
  std::ostringstream log;
  try {
    CmdScore(config_, log);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("D1"), std::string::npos) << e.what();
  }
}

TEST_F(PipelineTest, RemoteAnswersAreCachedAcrossRuns) {
  Build({2, 2, 2, 2, false});
  const std::string log_file = dir_ / "calls.log";
  config_.qa_backend =
      std::string("exec:") + QAEVAL_TEST_WORKER + " --log " + log_file;
  RunPipeline();
  const std::string first = Out(kF1MatrixFile);
  std::size_t calls = 0;
  {
    std::ifstream in(log_file);
    std::string line;
    while (std::getline(in, line)) ++calls;
  }
  EXPECT_GT(calls, 0u);
  std::ostringstream log;
  CmdScore(config_, log);
  EXPECT_NE(log.str().find(" 0 misses"), std::string::npos) << log.str();
  EXPECT_EQ(Out(kF1MatrixFile), first);
}

TEST_F(PipelineTest, CorrelateAgainstJudgments) {
  Build({6, 2, 4, 2, true});
  RunPipeline();
  CorrelateArgs args;
  args.metric_files = {dir_ / "out/qaeval-em.json", dir_ / "out/qaeval-f1.json"};
  args.judgments = config_.dataset;
  args.output_json = dir_ / "corr.json";
  std::ostringstream out;
  const auto rows = CmdCorrelate(args, config_, out);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    ASSERT_EQ(row.cells.size(), 6u);
    for (const auto& cell : row.cells) {
      ASSERT_TRUE(cell.value.has_value()) << cell.note;
      EXPECT_NEAR(*cell.value, 1.0, 1e-12);
    }
  }
  EXPECT_EQ(out.str().rfind("# config_hash=", 0), 0u);
  const json j = io::ReadJsonFile(args.output_json);
  EXPECT_EQ(j["rows"].size(), 2u);
}

TEST_F(PipelineTest, CorrelateJudgmentsWithThemselves) {
  Build({5, 1, 3, 2, false});
  const ScoreMatrix y = JudgmentMatrix(dataset_);
  io::WriteFileAtomic(dir_ / "y.json", io::DumpJson(ScoreMatrixToJson(y)));
  CorrelateArgs args;
  args.metric_files = {dir_ / "y.json"};
  args.judgments = dir_ / "y.json";
  std::ostringstream out;
  const auto rows = CmdCorrelate(args, config_, out);
  for (const auto& cell : rows[0].cells) {
    ASSERT_TRUE(cell.value.has_value());
    EXPECT_DOUBLE_EQ(*cell.value, 1.0);
  }
}

TEST_F(PipelineTest, CorrelateLabelMismatchNamesOffenders) {
  Build({3, 1, 3, 2, false});
  ScoreMatrix y = JudgmentMatrix(dataset_);
  io::WriteFileAtomic(dir_ / "y.json", io::DumpJson(ScoreMatrixToJson(y)));
  y.systems[1] = "Q1";
  io::WriteFileAtomic(dir_ / "x.json", io::DumpJson(ScoreMatrixToJson(y)));
  CorrelateArgs args;
  args.metric_files = {dir_ / "x.json"};
  args.judgments = dir_ / "y.json";
  std::ostringstream out;
  try {
    CmdCorrelate(args, config_, out);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("Q1"), std::string::npos) << e.what();
  }
}

TEST_F(PipelineTest, InstanceCurveIsDeterministic) {
  Build({10, 1, 4, 2, false});
  RunPipeline();
  CurveArgs args;
  args.metric_file = dir_ / "out/qaeval-f1.json";
  args.judgments = config_.dataset;
  args.sizes = {2, 4, 6, 8, 10};
  args.output_prefix = dir_ / "a";
  config_.seed = 17;
  std::ostringstream log;
  const auto curve = CmdCurve(args, config_, log);
  ASSERT_EQ(curve.size(), 5u);
  EXPECT_EQ(curve.back().ci_low, curve.back().ci_high);
  args.output_prefix = dir_ / "b";
  CmdCurve(args, config_, log);
  const std::string a = io::ReadFile(dir_ / "a.csv");
  EXPECT_EQ(a, io::ReadFile(dir_ / "b.csv"));
  EXPECT_EQ(a.rfind("# config_hash=", 0), 0u);
  EXPECT_NE(a.find("\nk,mean,ci_low,ci_high\n"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "a.svg"));
}

TEST_F(PipelineTest, ReferenceCurveHasOneRowPerSize) {
  Build({4, 4, 3, 2, false});
  RunPipeline();
  CurveArgs args;
  args.mode = CurveMode::kReferences;
  args.details_file = dir_ / "out/qaeval-details.json";
  args.judgments = config_.dataset;
  args.sizes = {1, 2, 3, 4};
  args.n_samples = 10;
  args.output_prefix = dir_ / "refs";
  args.plot = false;
  std::ostringstream log;
  const auto curve = CmdCurve(args, config_, log);
  ASSERT_EQ(curve.size(), 4u);
  // Every reference subset gives each peer the same score here.
  for (const auto& point : curve) EXPECT_NEAR(point.mean, 1.0, 1e-12);
  EXPECT_FALSE(std::filesystem::exists(dir_ / "refs.svg"));
}

TEST_F(PipelineTest, CurveRejectsOversizedSample) {
  Build({3, 1, 3, 2, false});
  RunPipeline();
  CurveArgs args;
  args.metric_file = dir_ / "out/qaeval-f1.json";
  args.judgments = config_.dataset;
  args.sizes = {4};
  args.output_prefix = dir_ / "c";
  std::ostringstream log;
  EXPECT_THROW(CmdCurve(args, config_, log), Error);
}

TEST_F(PipelineTest, MarginSeparatesReferenceSystem) {
  Build({3, 2, 3, 2, true});
  RunPipeline();
  std::ostringstream out;
  const auto rows = CmdMargin({dir_ / "out/qaeval-em.json"}, config_,
                              dir_ / "margin.json", out);
  ASSERT_EQ(rows.size(), 2u);
  // H scores 1.0; the best peer copies 2 of 3 sentences.
  EXPECT_NEAR(rows[0].margin, 1.0 / 3.0, 1e-12);
  EXPECT_EQ(rows[1].metric, "responsiveness");
  // Judgment means span [0, 4] after the shared offset; H leads P2 by 2.
  EXPECT_NEAR(rows[1].margin, 0.5, 1e-12);
}

TEST_F(PipelineTest, MarginNeedsReferenceSystem) {
  Build({2, 1, 2, 2, false});
  std::ostringstream out;
  EXPECT_THROW(CmdMargin({}, config_, "", out), ValidationError);
}

TEST(MarginCommandTest, HandComputedValues) {
  TempDir dir;
  EvalInstance a;
  a.instance_id = "D0";
  a.references = {{"R0", SummarizerType::kReference, "r", {}}};
  a.candidates = {{"P1", SummarizerType::kPeer, "x", {}},
                  {"P2", SummarizerType::kPeer, "x", {}},
                  {"H1", SummarizerType::kReference, "x", {}},
                  {"H2", SummarizerType::kReference, "x", {}}};
  a.judgments = {{"P1", 2}, {"P2", 6}, {"H1", 10}, {"H2", 9}};
  io::WriteFileAtomic(dir / "dataset.json",
                      io::DumpJson(DatasetToJson(BuildDataset({a}))));
  RunConfig config;
  config.dataset = dir / "dataset.json";
  std::ostringstream out;
  EXPECT_EQ(CmdMargin({}, config, "", out)[0].margin, 0.375);

  a.candidates.pop_back();
  a.judgments = {{"P1", 2}, {"P2", 7}, {"H1", 5}};
  io::WriteFileAtomic(dir / "dataset.json",
                      io::DumpJson(DatasetToJson(BuildDataset({a}))));
  EXPECT_NEAR(CmdMargin({}, config, "", out)[0].margin, -0.4, 1e-12);
}

TEST(CoverageCommandTest, GroupsByStrategy) {
  TempDir dir;
  io::WriteFileAtomic(dir / "a.json", R"({"mappings": [
    {"strategy": "ner", "scus": ["s1", "s2"],
     "mapping": {"q1": "s1", "q2": null}},
    {"strategy": "np_chunks", "scus": ["s1", "s2"],
     "mapping": {"q1": "s1", "q2": "s2", "q3": "s2", "q4": null}}]})");
  io::WriteFileAtomic(dir / "b.json", R"({"strategy": "ner", "scus": ["t1"],
    "mapping": {"q1": "t1", "q2": "t1"}})");
  RunConfig config;
  std::ostringstream out;
  const auto rows =
      CmdCoverage({dir / "a.json", dir / "b.json"}, config, dir / "c.json", out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].strategy, "ner");
  EXPECT_EQ(rows[0].references, 2u);
  EXPECT_DOUBLE_EQ(rows[0].avg_questions, 2.0);
  EXPECT_DOUBLE_EQ(rows[0].qa_precision, 0.75);
  EXPECT_DOUBLE_EQ(rows[0].scu_coverage, 0.75);
  EXPECT_EQ(rows[1].strategy, "np_chunks");
  EXPECT_DOUBLE_EQ(rows[1].qa_precision, 0.75);
  EXPECT_DOUBLE_EQ(rows[1].scu_coverage, 1.0);
  EXPECT_TRUE(std::filesystem::exists(dir / "c.json"));
}

int RunBinary(const std::string& args) {
  const std::string command =
      std::string(QAEVAL_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(PipelineTest, BinaryExitCodes) {
  Build({2, 1, 2, 2, false});
  const std::string common = "--dataset " + config_.dataset +
                             " --annotations " + config_.annotations_dir +
                             " --questions " + config_.questions_dir +
                             " --output-dir " + config_.output_dir +
                             " --cache-dir " + config_.cache_dir;
  EXPECT_EQ(RunBinary("--version"), kExitOk);
  EXPECT_EQ(RunBinary(""), kExitValidation);
  EXPECT_EQ(RunBinary("questions --strategy verbs " + common), kExitValidation);
  EXPECT_EQ(RunBinary("validate --dataset /nonexistent.json"), kExitValidation);
  EXPECT_EQ(RunBinary("questions " + common), kExitOk);
  EXPECT_EQ(RunBinary("validate " + common), kExitOk);
  EXPECT_EQ(RunBinary("score " + common + " --max-attempts 1 --qa 'exec:" +
                      QAEVAL_TEST_WORKER + " --error-all'"),
            kExitBackend);
  EXPECT_EQ(RunBinary("score " + common), kExitOk);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "out/qaeval-f1.json"));
}

}  // namespace
}  // namespace qaeval::cli
