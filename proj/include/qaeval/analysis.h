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

// Meta-evaluation of metrics against human judgments.
//
// For metric scores x[i][j] and judgments y[i][j] of system i on instance j:
//   summary level: correlate across systems within each instance, then take
//                  the mean over instances
//   system level:  correlate the per-system means over instances
// Instances where the per-instance correlation is undefined (fewer than two
// systems scored by both, or no variation) are skipped and counted.

#ifndef QAEVAL_ANALYSIS_H_
#define QAEVAL_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qaeval/corpus.h"
#include "qaeval/correlation.h"
#include "qaeval/score_matrix.h"

namespace qaeval {

enum class Level { kSummary, kSystem };

std::string_view LevelName(Level level);  // "summary" / "system"
Level ParseLevel(std::string_view name);

struct CorrelationReport {
  Level level = Level::kSummary;
  Coefficient coefficient = Coefficient::kPearson;
  double value = 0.0;
  std::size_t instances_used = 0;
  std::size_t instances_skipped = 0;
};

// `x` and `y` must carry the same system and instance labels (any order);
// mismatches throw ValidationError. SummaryLevel throws DegenerateInputError
// when every instance is skipped.
CorrelationReport SummaryLevel(const ScoreMatrix& x, const ScoreMatrix& y,
                               Coefficient coefficient);
CorrelationReport SystemLevel(const ScoreMatrix& x, const ScoreMatrix& y,
                              Coefficient coefficient);
CorrelationReport CorrelateAt(Level level, const ScoreMatrix& x,
                              const ScoreMatrix& y, Coefficient coefficient);

// Correlates two per-system mean vectors, dropping systems missing on
// either side. Throws DegenerateInputError with fewer than two systems left.
double CorrelateMeans(const std::vector<Cell>& x_means,
                      const std::vector<Cell>& y_means,
                      Coefficient coefficient);

struct CurvePoint {
  int size = 0;  // k instances or r references
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t samples_used = 0;
  std::size_t samples_skipped = 0;
};

// mean +- 1.96 * sample std / sqrt(n); zero width when all values agree.
CurvePoint SummarizeSamples(int size, const std::vector<double>& values,
                            std::size_t skipped);

struct CurveOptions {
  Coefficient coefficient = Coefficient::kPearson;
  Level level = Level::kSystem;
  std::vector<int> sizes;
  int n_samples = 30;
  uint64_t seed = 0;
  // System level only: when false, judgment means use every instance while
  // metric means use only the sampled ones.
  bool restrict_judgments = true;
  int parallelism = 1;
};

// For each k in options.sizes, correlates on n_samples random subsets of k
// instances (sampled without replacement). Throws PreconditionError when
// k > M or k < 1.
std::vector<CurvePoint> DownsampleInstances(const ScoreMatrix& x,
                                            const ScoreMatrix& y,
                                            const CurveOptions& options);

// Scores of every system of `judgments` on one instance when only the given
// references (indices into that instance's reference list, ascending) are
// available. Order follows judgments.systems.
using RescoreFn = std::function<std::vector<Cell>(
    std::size_t instance, const std::vector<std::size_t>& references)>;

// For each r in options.sizes and each sample, picks r references per
// instance, rescores, and correlates against `judgments` (whose instances
// follow `reference_counts`). Throws PreconditionError when r exceeds an
// instance's reference count.
std::vector<CurvePoint> ReferenceCurve(
    const std::vector<std::size_t>& reference_counts,
    const ScoreMatrix& judgments, const RescoreFn& rescore,
    const CurveOptions& options);

// Lowest min-max scaled reference score minus highest scaled peer score.
// Negative when some peer outscores some reference.
double PeerReferenceMargin(const std::map<std::string, double>& scores,
                           const std::map<std::string, SummarizerType>& types);

// QA pair -> SCU mapping for one reference (or a pooled set).
// File: {"scus": [str], "mapping": {question_id: scu_id|null}}
struct SCUMapping {
  std::vector<std::string> scus;
  std::map<std::string, std::optional<std::string>> qa_to_scu;
};

SCUMapping SCUMappingFromJson(const nlohmann::json& j, const std::string& where);

// Fraction of QA pairs mapped to some SCU.
double QaPrecision(const SCUMapping& mapping);
// Fraction of SCUs hit by at least one QA pair.
double ScuCoverage(const SCUMapping& mapping);

}  // namespace qaeval

#endif  // QAEVAL_ANALYSIS_H_
