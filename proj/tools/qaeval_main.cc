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

// qaeval command-line driver.
//   exit 0: success
//   exit 1: usage, format or validation error
//   exit 2: backend failure (rerun to resume from the cache)

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qaeval/cli/commands.h"
#include "qaeval/cli/config.h"
#include "qaeval/errors.h"

namespace {

using namespace qaeval;
using namespace qaeval::cli;

void AddConfigOptions(CLI::App* cmd, ConfigOverrides& o) {
  cmd->add_option("--config", o.config_file, "JSON run configuration");
  cmd->add_option("--dataset", o.dataset, "dataset JSON file");
  cmd->add_option("--annotations", o.annotations_dir, "annotation directory");
  cmd->add_option("--questions", o.questions_dir, "question-set directory");
  cmd->add_option("--output-dir", o.output_dir, "output directory");
  cmd->add_option("--strategy", o.strategy, "NER, NP_CHUNKS or MAX_NP");
  cmd->add_option("--qg", o.qg_backend,
                  "question generator: template, exec:<cmd> or http URL");
  cmd->add_option("--qa", o.qa_backend,
                  "answerer: oracle, human:<path>, exec:<cmd> or http URL");
  cmd->add_option("--verifier", o.verifier, "automatic or human:<path>");
  cmd->add_option("--cache-dir", o.cache_dir,
                  std::string("result cache directory (env ") + kCacheDirEnv +
                      ")");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--parallelism", o.parallelism, "concurrent backend calls");
  cmd->add_option("--timeout", o.timeout_seconds, "per-request timeout (s)");
  cmd->add_option("--max-attempts", o.max_attempts, "attempts per request");
  cmd->add_option("--averaging", o.averaging, "macro or micro");
  cmd->add_option("--exclude-self-reference", o.exclude_self_reference,
                  "skip a reference when scoring its own author");
}

std::vector<Level> ParseLevels(const std::vector<std::string>& names) {
  std::vector<Level> out;
  for (const auto& n : names) out.push_back(ParseLevel(n));
  return out;
}

std::vector<Coefficient> ParseCoefficients(const std::vector<std::string>& names) {
  std::vector<Coefficient> out;
  for (const auto& n : names) out.push_back(ParseCoefficient(n));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QA-based content evaluation of summaries"};
  app.set_version_flag("--version", std::string(kToolkitVersion));
  app.require_subcommand(1);

  ConfigOverrides overrides;
  std::vector<std::string> metric_files;
  std::string judgments;
  std::string output_json;
  std::vector<std::string> level_names = {"system", "summary"};
  std::vector<std::string> coefficient_names = {"pearson", "spearman",
                                                "kendall"};
  bool include_references = false;

  auto* questions = app.add_subcommand("questions", "generate question sets");
  auto* score = app.add_subcommand("score", "answer and score candidates");
  auto* correlate =
      app.add_subcommand("correlate", "correlate metrics with judgments");
  auto* curve = app.add_subcommand("curve", "downsampling learning curve");
  auto* margin = app.add_subcommand("margin", "peer-reference margins");
  auto* coverage = app.add_subcommand("coverage", "QA/SCU coverage report");
  auto* validate = app.add_subcommand("validate", "check inputs");
  for (auto* cmd : {questions, score, correlate, curve, margin, coverage,
                    validate}) {
    AddConfigOptions(cmd, overrides);
  }

  correlate->add_option("--metric", metric_files, "metric matrix file")
      ->required();
  correlate->add_option("--judgments", judgments, "judgment matrix or dataset")
      ->required();
  correlate->add_option("--levels", level_names, "system, summary");
  correlate->add_option("--coefficients", coefficient_names,
                        "pearson, spearman, kendall");
  correlate->add_flag("--include-references", include_references,
                      "keep reference-type summarizers");
  correlate->add_option("--json", output_json, "write the report as JSON");

  CurveArgs curve_args;
  std::string mode = "instances";
  std::string curve_level = "system";
  std::string curve_coefficient = "pearson";
  bool all_judgments = false;
  bool no_plot = false;
  curve->add_option("--mode", mode, "instances or references");
  curve->add_option("--metric", curve_args.metric_file,
                    "metric matrix (instances mode)");
  curve->add_option("--details", curve_args.details_file,
                    "per-reference details (references mode)");
  curve->add_option("--score", curve_args.score, "em or f1 (references mode)");
  curve->add_option("--judgments", curve_args.judgments,
                    "judgment matrix or dataset");
  curve->add_option("--level", curve_level, "system or summary");
  curve->add_option("--coefficient", curve_coefficient,
                    "pearson, spearman or kendall");
  curve->add_option("--sizes", curve_args.sizes, "sample sizes")->required();
  curve->add_option("--samples", curve_args.n_samples, "samples per size");
  curve->add_flag("--all-judgments", all_judgments,
                  "system level: judgment means over every instance");
  curve->add_flag("--include-references", include_references,
                  "keep reference-type summarizers");
  curve->add_option("--out", curve_args.output_prefix, "output path prefix");
  curve->add_flag("--no-plot", no_plot, "skip the SVG plot");

  margin->add_option("--metric", metric_files, "metric matrix file")
      ->required();
  margin->add_option("--json", output_json, "write the table as JSON");

  std::vector<std::string> mapping_files;
  coverage->add_option("mappings", mapping_files, "SCU mapping files")
      ->required();
  coverage->add_option("--json", output_json, "write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  RunConfig config;
  try {
    config = ResolveConfig(overrides);
    if (*questions) {
      CmdQuestions(config, std::cerr);
    } else if (*score) {
      CmdScore(config, std::cerr);
    } else if (*correlate) {
      CorrelateArgs args;
      args.metric_files = metric_files;
      args.judgments = judgments;
      args.levels = ParseLevels(level_names);
      args.coefficients = ParseCoefficients(coefficient_names);
      args.include_references = include_references;
      args.output_json = output_json;
      CmdCorrelate(args, config, std::cout);
    } else if (*curve) {
      curve_args.mode = ParseCurveMode(mode);
      curve_args.level = ParseLevel(curve_level);
      curve_args.coefficient = ParseCoefficient(curve_coefficient);
      curve_args.restrict_judgments = !all_judgments;
      curve_args.include_references = include_references;
      curve_args.plot = !no_plot;
      CmdCurve(curve_args, config, std::cerr);
    } else if (*margin) {
      CmdMargin(metric_files, config, output_json, std::cout);
    } else if (*coverage) {
      CmdCoverage(mapping_files, config, output_json, std::cout);
    } else if (*validate) {
      CmdValidate(config, std::cout);
    }
  } catch (const BackendError& e) {
    std::cerr << "backend failure: " << e.what() << "\n"
              << "completed requests from remote backends are cached in "
              << config.cache_dir
              << "; check the backend and rerun the same command to resume\n";
    return kExitBackend;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
  return kExitOk;
}
