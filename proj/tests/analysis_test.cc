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

#include "qaeval/analysis.h"

#include <gtest/gtest.h>

#include <random>

#include "qaeval/errors.h"
#include "qaeval/random.h"

namespace qaeval {
namespace {

using nlohmann::json;

ScoreMatrix Matrix(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> systems, instances;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    systems.push_back("S" + std::to_string(i));
  }
  for (std::size_t j = 0; j < rows[0].size(); ++j) {
    instances.push_back("I" + std::to_string(j));
  }
  ScoreMatrix m = ScoreMatrix::Empty("m", systems, instances);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

ScoreMatrix RandomMatrix(uint64_t seed, std::size_t n, std::size_t m) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<std::vector<double>> rows(n, std::vector<double>(m));
  for (auto& row : rows) {
    for (auto& v : row) v = u(rng);
  }
  return Matrix(rows);
}

TEST(SummaryLevelTest, OppositeInstancesAverageToZero) {
  // Instance 0: x = y; instance 1: x reversed against y.
  const ScoreMatrix x = Matrix({{1, 3}, {2, 2}, {3, 1}});
  const ScoreMatrix y = Matrix({{1, 1}, {2, 2}, {3, 3}});
  const auto r = SummaryLevel(x, y, Coefficient::kPearson);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  EXPECT_EQ(r.instances_used, 2u);
}

TEST(SummaryLevelTest, SelfCorrelationIsOne) {
  const ScoreMatrix x = RandomMatrix(3, 8, 5);
  for (auto c : {Coefficient::kPearson, Coefficient::kSpearman,
                 Coefficient::kKendall}) {
    EXPECT_NEAR(SummaryLevel(x, x, c).value, 1.0, 1e-12);
    EXPECT_NEAR(SystemLevel(x, x, c).value, 1.0, 1e-12);
  }
}

TEST(SummaryLevelTest, ConstantInstanceSkipped) {
  ScoreMatrix x = Matrix({{1, 5}, {2, 5}, {3, 5}});
  const ScoreMatrix y = Matrix({{1, 1}, {2, 3}, {3, 2}});
  const auto r = SummaryLevel(x, y, Coefficient::kPearson);
  EXPECT_EQ(r.instances_skipped, 1u);
  EXPECT_EQ(r.instances_used, 1u);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(SummaryLevelTest, AllSkippedIsDegenerate) {
  const ScoreMatrix x = Matrix({{5}, {5}});
  const ScoreMatrix y = Matrix({{1}, {2}});
  EXPECT_THROW(SummaryLevel(x, y, Coefficient::kPearson), DegenerateInputError);
}

TEST(SummaryLevelTest, LabelMismatchRejected) {
  ScoreMatrix x = Matrix({{1}, {2}});
  ScoreMatrix y = Matrix({{1}, {2}});
  y.systems[1] = "other";
  EXPECT_THROW(SummaryLevel(x, y, Coefficient::kPearson), ValidationError);
}

TEST(SystemLevelTest, MeansCorrelate) {
  const ScoreMatrix x = Matrix({{1, 1}, {2, 2}, {3, 3}});
  const ScoreMatrix y = Matrix({{0, 2}, {2, 2}, {3, 3}});
  EXPECT_NEAR(SystemLevel(x, y, Coefficient::kPearson).value, 1.0, 1e-12);
}

TEST(SystemLevelTest, SingleInstanceMatchesSummaryLevel) {
  const ScoreMatrix x = RandomMatrix(5, 6, 1);
  const ScoreMatrix y = RandomMatrix(6, 6, 1);
  for (auto c : {Coefficient::kPearson, Coefficient::kSpearman,
                 Coefficient::kKendall}) {
    EXPECT_DOUBLE_EQ(SystemLevel(x, y, c).value, SummaryLevel(x, y, c).value);
  }
}

TEST(SystemLevelTest, TwoSystemsGiveUnitMagnitude) {
  const ScoreMatrix x = RandomMatrix(8, 2, 4);
  const ScoreMatrix y = RandomMatrix(9, 2, 4);
  EXPECT_NEAR(std::abs(SystemLevel(x, y, Coefficient::kPearson).value), 1.0,
              1e-12);
}

TEST(SummarizeSamplesTest, ConstantSamplesHaveZeroWidth) {
  const CurvePoint p = SummarizeSamples(3, {0.5, 0.5, 0.5}, 0);
  EXPECT_EQ(p.ci_low, p.ci_high);
  EXPECT_EQ(p.mean, 0.5);
}

TEST(SummarizeSamplesTest, NormalInterval) {
  const CurvePoint p = SummarizeSamples(3, {1, 2, 3}, 1);
  EXPECT_DOUBLE_EQ(p.mean, 2.0);
  EXPECT_NEAR(p.ci_high - p.mean, 1.96 / std::sqrt(3.0), 1e-12);
  EXPECT_EQ(p.samples_skipped, 1u);
}

TEST(CurveOptionsTest, DefaultSampleCount) {
  EXPECT_EQ(CurveOptions{}.n_samples, 30);
}

TEST(DownsampleInstancesTest, FullSizeReproducesFullCorrelation) {
  const ScoreMatrix x = RandomMatrix(1, 10, 12);
  const ScoreMatrix y = RandomMatrix(2, 10, 12);
  CurveOptions options;
  options.sizes = {2, 4, 6, 8, 10, 12};
  const auto curve = DownsampleInstances(x, y, options);
  ASSERT_EQ(curve.size(), 6u);
  const CurvePoint& full = curve.back();
  EXPECT_EQ(full.ci_low, full.ci_high);
  EXPECT_DOUBLE_EQ(full.mean,
                   SystemLevel(x, y, Coefficient::kPearson).value);
}

TEST(DownsampleInstancesTest, DeterministicAcrossParallelism) {
  const ScoreMatrix x = RandomMatrix(1, 10, 12);
  const ScoreMatrix y = RandomMatrix(2, 10, 12);
  CurveOptions options;
  options.sizes = {2, 4, 6, 8, 10};
  options.seed = 99;
  options.level = Level::kSummary;
  const auto serial = DownsampleInstances(x, y, options);
  options.parallelism = 4;
  const auto parallel = DownsampleInstances(x, y, options);
  ASSERT_EQ(serial.size(), 5u);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].mean, parallel[i].mean);
    EXPECT_EQ(serial[i].ci_low, parallel[i].ci_low);
  }
  options.seed = 100;
  EXPECT_NE(DownsampleInstances(x, y, options)[0].mean, serial[0].mean);
}

TEST(DownsampleInstancesTest, SizeOutOfRangeRejected) {
  const ScoreMatrix x = RandomMatrix(1, 4, 3);
  CurveOptions options;
  options.sizes = {4};
  EXPECT_THROW(DownsampleInstances(x, x, options), PreconditionError);
  options.sizes = {0};
  EXPECT_THROW(DownsampleInstances(x, x, options), PreconditionError);
}

TEST(DownsampleInstancesTest, UnrestrictedJudgmentsUseAllInstances) {
  const ScoreMatrix x = RandomMatrix(1, 6, 8);
  const ScoreMatrix y = RandomMatrix(2, 6, 8);
  CurveOptions options;
  options.sizes = {3};
  options.n_samples = 1;
  options.restrict_judgments = false;
  const double value = DownsampleInstances(x, y, options)[0].mean;

  std::mt19937_64 rng(DeriveSeed(options.seed, {3, 0}));
  const auto cols = SampleWithoutReplacement(rng, 8, 3);
  const double expected = CorrelateMeans(x.SelectInstances(cols).SystemMeans(),
                                         y.SystemMeans(), Coefficient::kPearson);
  EXPECT_DOUBLE_EQ(value, expected);
}

TEST(ReferenceCurveTest, FullReferenceCountMatchesFullScores) {
  const ScoreMatrix y = RandomMatrix(4, 5, 3);
  const ScoreMatrix x = RandomMatrix(5, 5, 3);
  RescoreFn rescore = [&](std::size_t j, const std::vector<std::size_t>& refs) {
    EXPECT_EQ(refs.size(), 3u);
    std::vector<Cell> column;
    for (std::size_t i = 0; i < 5; ++i) column.push_back(x.at(i, j));
    return column;
  };
  CurveOptions options;
  options.sizes = {3};
  const auto curve = ReferenceCurve({3, 3, 3}, y, rescore, options);
  EXPECT_DOUBLE_EQ(curve[0].mean, SystemLevel(x, y, Coefficient::kPearson).value);
  EXPECT_EQ(curve[0].ci_low, curve[0].ci_high);
}

TEST(ReferenceCurveTest, TooManyReferencesRejected) {
  const ScoreMatrix y = RandomMatrix(4, 5, 2);
  RescoreFn rescore = [](std::size_t, const std::vector<std::size_t>&) {
    return std::vector<Cell>(5, 0.0);
  };
  CurveOptions options;
  options.sizes = {3};
  EXPECT_THROW(ReferenceCurve({4, 2}, y, rescore, options), PreconditionError);
}

TEST(MarginTest, WorkedExample) {
  const std::map<std::string, double> scores = {
      {"R1", 10}, {"R2", 9}, {"P1", 2}, {"P2", 6}};
  const std::map<std::string, SummarizerType> types = {
      {"R1", SummarizerType::kReference}, {"R2", SummarizerType::kReference},
      {"P1", SummarizerType::kPeer}, {"P2", SummarizerType::kPeer}};
  EXPECT_EQ(PeerReferenceMargin(scores, types), 0.375);
}

TEST(MarginTest, PeerAboveReferenceIsNegative) {
  const std::map<std::string, double> scores = {{"R1", 5}, {"P1", 2}, {"P2", 7}};
  const std::map<std::string, SummarizerType> types = {
      {"R1", SummarizerType::kReference},
      {"P1", SummarizerType::kPeer},
      {"P2", SummarizerType::kPeer}};
  EXPECT_DOUBLE_EQ(PeerReferenceMargin(scores, types), -0.4);
}

TEST(MarginTest, NeedsBothKinds) {
  const std::map<std::string, double> scores = {{"P1", 2}, {"P2", 7}};
  const std::map<std::string, SummarizerType> types = {
      {"P1", SummarizerType::kPeer}, {"P2", SummarizerType::kPeer}};
  EXPECT_THROW(PeerReferenceMargin(scores, types), PreconditionError);
}

TEST(CoverageTest, PrecisionAndCoverage) {
  const SCUMapping m = SCUMappingFromJson(
      json::parse(R"({"scus": ["1", "2", "3", "4"],
                      "mapping": {"q1": "1", "q2": "2", "q3": "1", "q4": null}})"),
      "test");
  EXPECT_EQ(QaPrecision(m), 0.75);
  EXPECT_EQ(ScuCoverage(m), 0.5);
}

TEST(CoverageTest, AllAndNothingMapped) {
  const SCUMapping all = SCUMappingFromJson(
      json::parse(R"({"scus": ["1"], "mapping": {"q1": "1"}})"), "t");
  EXPECT_EQ(QaPrecision(all), 1.0);
  const SCUMapping none = SCUMappingFromJson(
      json::parse(R"({"scus": ["1", "2"], "mapping": {"q1": null}})"), "t");
  EXPECT_EQ(ScuCoverage(none), 0.0);
}

TEST(CoverageTest, UnknownScuRejected) {
  EXPECT_THROW(SCUMappingFromJson(
                   json::parse(R"({"scus": ["1"], "mapping": {"q1": "9"}})"),
                   "t"),
               Error);
}

}  // namespace
}  // namespace qaeval
