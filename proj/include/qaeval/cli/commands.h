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

// Command implementations behind the qaeval executable. Each command throws
// a qaeval::Error subclass on failure; ExitCodeFor maps those to exit codes.

#ifndef QAEVAL_CLI_COMMANDS_H_
#define QAEVAL_CLI_COMMANDS_H_

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qaeval/analysis.h"
#include "qaeval/cli/config.h"
#include "qaeval/corpus.h"
#include "qaeval/score_matrix.h"

namespace qaeval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBackend = 2;

// 2 for BackendError, 1 for everything else.
int ExitCodeFor(const std::exception& error);

// File names inside output / question directories.
std::string QuestionFileName(const std::string& instance_id);
inline constexpr const char* kEmMatrixFile = "qaeval-em.json";
inline constexpr const char* kF1MatrixFile = "qaeval-f1.json";
inline constexpr const char* kDetailsFile = "qaeval-details.json";

// Writes one question-set file per instance into config.questions_dir.
// Returns the total number of QA pairs.
std::size_t CmdQuestions(const RunConfig& config, std::ostream& log);

// Answers every question set against every candidate and writes the EM and
// F1 matrices plus per-reference details into config.output_dir.
void CmdScore(const RunConfig& config, std::ostream& log);

// Judgments come from a score-matrix file or from a dataset file. With a
// dataset, only peer systems are correlated unless include_references.
struct JudgmentSource {
  ScoreMatrix matrix;
  std::optional<std::map<std::string, SummarizerType>> types;
};
JudgmentSource LoadJudgments(const std::string& path);

struct CorrelateArgs {
  std::vector<std::string> metric_files;
  std::string judgments;
  std::vector<Level> levels = {Level::kSystem, Level::kSummary};
  std::vector<Coefficient> coefficients = {
      Coefficient::kPearson, Coefficient::kSpearman, Coefficient::kKendall};
  bool include_references = false;
  std::string output_json;  // optional
};

struct CorrelationCell {
  Level level;
  Coefficient coefficient;
  std::optional<double> value;  // nullopt when undefined
  std::size_t instances_used = 0;
  std::size_t instances_skipped = 0;
  std::string note;
};

struct CorrelationRow {
  std::string metric;
  std::vector<CorrelationCell> cells;  // levels x coefficients
};

// Prints an aligned text table to `out` and returns the rows.
std::vector<CorrelationRow> CmdCorrelate(const CorrelateArgs& args,
                                         const RunConfig& config,
                                         std::ostream& out);

enum class CurveMode { kInstances, kReferences };
CurveMode ParseCurveMode(const std::string& name);

struct CurveArgs {
  CurveMode mode = CurveMode::kInstances;
  std::string metric_file;   // instances mode
  std::string details_file;  // references mode
  std::string score = "f1";  // references mode: "em" or "f1"
  std::string judgments;     // matrix or dataset; references mode: dataset
  Level level = Level::kSystem;
  Coefficient coefficient = Coefficient::kPearson;
  std::vector<int> sizes;
  int n_samples = 30;
  bool restrict_judgments = true;
  bool include_references = false;
  std::string output_prefix = "curve";
  bool plot = true;
};

// Writes <prefix>.csv, <prefix>.json and (optionally) <prefix>.svg.
std::vector<CurvePoint> CmdCurve(const CurveArgs& args, const RunConfig& config,
                                 std::ostream& log);

struct MarginRow {
  std::string metric;
  double margin = 0.0;
};

// Per-metric margin over system means, followed by a responsiveness row.
std::vector<MarginRow> CmdMargin(const std::vector<std::string>& metric_files,
                                 const RunConfig& config,
                                 const std::string& output_json,
                                 std::ostream& out);

struct CoverageRow {
  std::string strategy;
  std::size_t references = 0;
  double avg_questions = 0.0;
  double qa_precision = 0.0;
  double scu_coverage = 0.0;
};

// Mapping files hold one mapping object, optionally with "strategy", or
// {"mappings": [...]}. Rows are grouped by strategy and averaged over
// references.
std::vector<CoverageRow> CmdCoverage(const std::vector<std::string>& files,
                                     const RunConfig& config,
                                     const std::string& output_json,
                                     std::ostream& out);

// Loads the dataset and, when configured, the annotations and question
// files; prints a short summary.
void CmdValidate(const RunConfig& config, std::ostream& out);

}  // namespace qaeval::cli

#endif  // QAEVAL_CLI_COMMANDS_H_
