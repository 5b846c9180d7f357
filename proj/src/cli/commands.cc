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

#include "qaeval/cli/commands.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include "qaeval/answer_selection.h"
#include "qaeval/backends.h"
#include "qaeval/cache.h"
#include "qaeval/cli/plot.h"
#include "qaeval/errors.h"
#include "qaeval/io.h"
#include "qaeval/scoring.h"
#include "qaeval/workers.h"

namespace qaeval::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string HashWith(const RunConfig& config, const json& args) {
  return Sha256Hex(json{{"config", config.ToJson()}, {"args", args}}.dump());
}

void WriteJson(const fs::path& path, const json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  io::WriteFileAtomic(path.string(), io::DumpJson(j));
}

std::string Fixed(std::optional<double> v, int digits = 3) {
  if (!v) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, *v);
  return buf;
}

std::string Full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json OptionalJson(std::optional<double> v) { return v ? json(*v) : json(); }

// Left-aligned first column, right-aligned others.
void PrintTable(const std::vector<std::vector<std::string>>& rows,
                std::ostream& out) {
  if (rows.empty()) return;
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::size_t pad = widths[c] - row[c].size();
      if (c == 0) {
        line += row[c] + std::string(pad, ' ');
      } else {
        line += "  " + std::string(pad, ' ') + row[c];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

std::string ProvenanceLine(const json& provenance) {
  return "# config_hash=" + provenance["config_hash"].get<std::string>() +
         " toolkit_version=" +
         provenance["toolkit_version"].get<std::string>() +
         " seed=" + std::to_string(provenance["seed"].get<uint64_t>());
}

TransportOptions TransportFor(const RunConfig& config) {
  return TransportOptions{config.parallelism, config.timeout_seconds};
}

std::shared_ptr<QGBackend> QuestionBackend(const RunConfig& config) {
  auto backend = MakeQuestionGenerator(config.qg_backend, TransportFor(config));
  if (!IsRemoteSpec(config.qg_backend)) return backend;
  return std::make_shared<CachedQuestionGenerator>(
      std::move(backend), std::make_shared<ResultCache>(config.cache_dir));
}

std::shared_ptr<QABackend> AnswerBackend(const RunConfig& config) {
  auto backend = MakeAnswerer(config.qa_backend, TransportFor(config));
  if (!IsRemoteSpec(config.qa_backend)) return backend;
  return std::make_shared<CachedAnswerer>(
      std::move(backend), std::make_shared<ResultCache>(config.cache_dir));
}

Verifier MakeVerifier(const RunConfig& config) {
  if (config.verifier == "automatic") return Verifier::Automatic();
  return Verifier::Human(std::make_shared<const HumanAnnotations>(
      LoadHumanAnnotations(config.verifier.substr(6))));
}

std::vector<InstanceQuestions> LoadQuestions(const EvalDataset& dataset,
                                             const std::string& dir) {
  std::vector<InstanceQuestions> out;
  std::vector<std::string> missing;
  for (const auto& instance : dataset.instances) {
    const fs::path path = fs::path(dir) / QuestionFileName(instance.instance_id);
    if (!fs::exists(path)) {
      missing.push_back(instance.instance_id);
      continue;
    }
    InstanceQuestions q =
        InstanceQuestionsFromJson(io::ReadJsonFile(path.string()), path.string());
    if (q.instance_id != instance.instance_id) {
      throw ValidationError(path.string() + " holds questions for instance \"" +
                            q.instance_id + "\"");
    }
    out.push_back(std::move(q));
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw ValidationError("no question file in " + dir +
                          " for instances: " + list);
  }
  return out;
}

// Keeps systems not typed as references.
ScoreMatrix PeersOnly(const ScoreMatrix& m,
                      const std::map<std::string, SummarizerType>& types) {
  std::vector<std::string> keep;
  for (const auto& id : m.systems) {
    auto it = types.find(id);
    if (it == types.end() || it->second != SummarizerType::kReference) {
      keep.push_back(id);
    }
  }
  return m.SelectSystems(keep);
}

std::string MetricLabel(const ScoreMatrix& m, const std::string& path) {
  return m.metric.empty() ? fs::path(path).stem().string() : m.metric;
}

std::string_view ShortName(Coefficient c) {
  switch (c) {
    case Coefficient::kPearson: return "r";
    case Coefficient::kSpearman: return "rho";
    case Coefficient::kKendall: return "tau";
  }
  return "?";
}

// Averages the selected references' scores for one candidate.
std::optional<double> Rescore(
    const std::map<std::string, ReferenceScore>& per_reference,
    const std::vector<std::string>& reference_ids, bool use_f1,
    Averaging averaging) {
  double sum = 0.0;
  double weight = 0.0;
  for (const auto& id : reference_ids) {
    auto it = per_reference.find(id);
    if (it == per_reference.end() || it->second.num_questions == 0) continue;
    const double value = use_f1 ? it->second.f1 : it->second.em;
    const double w = averaging == Averaging::kMicro
                         ? static_cast<double>(it->second.num_questions)
                         : 1.0;
    sum += w * value;
    weight += w;
  }
  return weight > 0 ? sum / weight : 0.0;
}

}  // namespace

int ExitCodeFor(const std::exception& error) {
  return dynamic_cast<const BackendError*>(&error) ? kExitBackend
                                                   : kExitValidation;
}

std::string QuestionFileName(const std::string& instance_id) {
  return EscapePathComponent(instance_id) + ".json";
}

std::size_t CmdQuestions(const RunConfig& config, std::ostream& log) {
  ValidateConfig(config, true, true, false);
  if (config.questions_dir.empty()) {
    throw ValidationError("no questions_dir given");
  }
  const EvalDataset dataset = LoadDataset(config.dataset);
  const AnnotationIndex annotations =
      LoadAnnotationDir(config.annotations_dir, dataset);
  auto qg = QuestionBackend(config);
  const auto questions = BuildDatasetQuestions(
      dataset, annotations, config.strategy, *qg, config.parallelism);

  const json provenance = Provenance(config.Hash(), config.seed);
  std::size_t total = 0;
  for (const auto& instance : questions) {
    json j = InstanceQuestionsToJson(instance);
    j["strategy"] = std::string(StrategyName(config.strategy));
    j["qg_backend"] = qg->name();
    j["provenance"] = provenance;
    WriteJson(fs::path(config.questions_dir) /
                  QuestionFileName(instance.instance_id),
              j);
    for (const auto& set : instance.sets) total += set.questions.size();
  }
  log << "wrote " << questions.size() << " question files (" << total
      << " questions) to " << config.questions_dir << '\n';
  return total;
}

void CmdScore(const RunConfig& config, std::ostream& log) {
  ValidateConfig(config, true, false, true);
  const EvalDataset dataset = LoadDataset(config.dataset);
  const auto questions = LoadQuestions(dataset, config.questions_dir);
  auto qa = AnswerBackend(config);
  const Verifier verifier = MakeVerifier(config);
  ScoringOptions options;
  options.averaging = config.averaging;
  options.exclude_self_reference = config.exclude_self_reference;
  options.parallelism = config.parallelism;
  options.max_attempts = config.max_attempts;
  const DatasetScores scores =
      ScoreDataset(dataset, questions, *qa, verifier, options);

  const json provenance = Provenance(config.Hash(), config.seed);
  const fs::path out_dir(config.output_dir);
  json em = ScoreMatrixToJson(scores.em);
  em["provenance"] = provenance;
  json f1 = ScoreMatrixToJson(scores.f1);
  f1["provenance"] = provenance;
  json details = CellScoresToJson(scores.cells);
  details["provenance"] = provenance;
  WriteJson(out_dir / kEmMatrixFile, em);
  WriteJson(out_dir / kF1MatrixFile, f1);
  WriteJson(out_dir / kDetailsFile, details);
  log << "scored " << dataset.num_systems() << " systems on "
      << dataset.num_instances() << " instances; wrote " << kEmMatrixFile
      << ", " << kF1MatrixFile << ", " << kDetailsFile << " to "
      << config.output_dir << '\n';
  if (auto* cached = dynamic_cast<CachedAnswerer*>(qa.get())) {
    log << "answer cache: " << cached->hits() << " hits, " << cached->misses()
        << " misses\n";
  }
}

JudgmentSource LoadJudgments(const std::string& path) {
  const json j = io::ReadJsonFile(path);
  io::ExpectObject(j, path);
  JudgmentSource source;
  if (j.contains("values")) {
    source.matrix = ScoreMatrixFromJson(j);
    source.matrix.Validate();
  } else {
    const EvalDataset dataset = DatasetFromJson(j);
    source.matrix = JudgmentMatrix(dataset);
    source.types = dataset.SystemTypes();
  }
  return source;
}

std::vector<CorrelationRow> CmdCorrelate(const CorrelateArgs& args,
                                         const RunConfig& config,
                                         std::ostream& out) {
  if (args.metric_files.empty()) {
    throw PreconditionError("no metric matrices given");
  }
  if (args.levels.empty() || args.coefficients.empty()) {
    throw PreconditionError("no levels or coefficients selected");
  }
  JudgmentSource judgments = LoadJudgments(args.judgments);
  ScoreMatrix y = judgments.matrix;
  if (judgments.types && !args.include_references) {
    y = PeersOnly(y, *judgments.types);
  }

  std::vector<CorrelationRow> rows;
  for (const auto& path : args.metric_files) {
    ScoreMatrix x = LoadScoreMatrix(path);
    if (judgments.types && !args.include_references) {
      x = PeersOnly(x, *judgments.types);
    }
    AlignTo(y, x);  // label check with a precise message
    CorrelationRow row;
    row.metric = MetricLabel(x, path);
    for (Level level : args.levels) {
      for (Coefficient c : args.coefficients) {
        CorrelationCell cell{level, c, std::nullopt, 0, 0, ""};
        try {
          const CorrelationReport report = CorrelateAt(level, x, y, c);
          cell.value = report.value;
          cell.instances_used = report.instances_used;
          cell.instances_skipped = report.instances_skipped;
        } catch (const DegenerateInputError& e) {
          cell.note = e.what();
        }
        row.cells.push_back(std::move(cell));
      }
    }
    rows.push_back(std::move(row));
  }

  json args_json{{"metrics", args.metric_files},
                 {"judgments", args.judgments},
                 {"include_references", args.include_references}};
  const json provenance = Provenance(HashWith(config, args_json), config.seed);
  out << ProvenanceLine(provenance) << '\n';

  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"metric"};
  for (Level level : args.levels) {
    for (Coefficient c : args.coefficients) {
      header.push_back(std::string(LevelName(level)) + ":" +
                       std::string(ShortName(c)));
    }
  }
  table.push_back(header);
  for (const auto& row : rows) {
    std::vector<std::string> line{row.metric};
    for (const auto& cell : row.cells) line.push_back(Fixed(cell.value));
    table.push_back(std::move(line));
  }
  PrintTable(table, out);
  for (const auto& row : rows) {
    std::size_t skipped = 0;
    for (const auto& cell : row.cells) {
      if (cell.level == Level::kSummary) {
        skipped = std::max(skipped, cell.instances_skipped);
      }
    }
    if (skipped > 0) {
      out << "note: " << row.metric << ": " << skipped
          << " instance(s) skipped at summary level (undefined correlation)\n";
    }
  }

  if (!args.output_json.empty()) {
    json rows_json = json::array();
    for (const auto& row : rows) {
      json correlations = json::object();
      json skipped = json::object();
      for (const auto& cell : row.cells) {
        const std::string level(LevelName(cell.level));
        correlations[level][std::string(CoefficientName(cell.coefficient))] =
            OptionalJson(cell.value);
        if (cell.level == Level::kSummary) {
          skipped[std::string(CoefficientName(cell.coefficient))] =
              cell.instances_skipped;
        }
      }
      rows_json.push_back(json{{"metric", row.metric},
                               {"correlations", correlations},
                               {"summary_instances_skipped", skipped}});
    }
    WriteJson(args.output_json,
              json{{"provenance", provenance}, {"rows", rows_json}});
  }
  return rows;
}

CurveMode ParseCurveMode(const std::string& name) {
  if (name == "instances") return CurveMode::kInstances;
  if (name == "references") return CurveMode::kReferences;
  throw PreconditionError("unknown curve mode \"" + name +
                          "\" (expected instances or references)");
}

std::vector<CurvePoint> CmdCurve(const CurveArgs& args, const RunConfig& config,
                                 std::ostream& log) {
  ValidateConfig(config, false, false, false);
  if (args.sizes.empty()) throw PreconditionError("no sample sizes given");
  CurveOptions options;
  options.coefficient = args.coefficient;
  options.level = args.level;
  options.sizes = args.sizes;
  options.n_samples = args.n_samples;
  options.seed = config.seed;
  options.restrict_judgments = args.restrict_judgments;
  options.parallelism = config.parallelism;

  std::vector<CurvePoint> curve;
  std::string x_label;
  if (args.mode == CurveMode::kInstances) {
    x_label = "instances (k)";
    JudgmentSource judgments = LoadJudgments(args.judgments);
    ScoreMatrix y = judgments.matrix;
    ScoreMatrix x = LoadScoreMatrix(args.metric_file);
    if (judgments.types && !args.include_references) {
      y = PeersOnly(y, *judgments.types);
      x = PeersOnly(x, *judgments.types);
    }
    curve = DownsampleInstances(x, y, options);
  } else {
    x_label = "references (r)";
    if (args.score != "em" && args.score != "f1") {
      throw PreconditionError("score must be em or f1");
    }
    const std::string dataset_path =
        args.judgments.empty() ? config.dataset : args.judgments;
    const EvalDataset dataset = LoadDataset(dataset_path);
    ScoreMatrix y = JudgmentMatrix(dataset);
    if (!args.include_references) y = PeersOnly(y, dataset.SystemTypes());

    const std::vector<CellScore> cells =
        CellScoresFromJson(io::ReadJsonFile(args.details_file));
    std::map<std::pair<std::string, std::string>,
             std::map<std::string, ReferenceScore>>
        lookup;
    for (const auto& cell : cells) {
      auto& refs = lookup[{cell.system, cell.instance}];
      for (const auto& ref : cell.score.per_reference) {
        refs[ref.reference_id] = ref;
      }
    }
    std::vector<std::size_t> counts;
    for (const auto& instance : dataset.instances) {
      counts.push_back(instance.references.size());
    }
    const bool use_f1 = args.score == "f1";
    RescoreFn rescore = [&](std::size_t j,
                            const std::vector<std::size_t>& selected) {
      const EvalInstance& instance = dataset.instances[j];
      std::vector<std::string> ids;
      for (std::size_t r : selected) {
        ids.push_back(instance.references[r].summarizer_id);
      }
      std::vector<Cell> column;
      for (const auto& system : y.systems) {
        auto it = lookup.find({system, instance.instance_id});
        column.push_back(it == lookup.end()
                             ? Cell()
                             : Rescore(it->second, ids, use_f1,
                                       config.averaging));
      }
      return column;
    };
    curve = ReferenceCurve(counts, y, rescore, options);
  }

  json args_json{{"mode", args.mode == CurveMode::kInstances ? "instances"
                                                               : "references"},
                 {"metric_file", args.metric_file},
                 {"details_file", args.details_file},
                 {"score", args.score},
                 {"judgments", args.judgments},
                 {"level", std::string(LevelName(args.level))},
                 {"coefficient", std::string(CoefficientName(args.coefficient))},
                 {"sizes", args.sizes},
                 {"n_samples", args.n_samples},
                 {"restrict_judgments", args.restrict_judgments},
                 {"include_references", args.include_references}};
  const json provenance = Provenance(HashWith(config, args_json), config.seed);

  std::string csv = ProvenanceLine(provenance) + "\nk,mean,ci_low,ci_high\n";
  json rows = json::array();
  for (const auto& p : curve) {
    csv += std::to_string(p.size) + "," + Full(p.mean) + "," + Full(p.ci_low) +
           "," + Full(p.ci_high) + "\n";
    rows.push_back(json{{"k", p.size},
                        {"mean", p.mean},
                        {"ci_low", p.ci_low},
                        {"ci_high", p.ci_high},
                        {"samples_used", p.samples_used},
                        {"samples_skipped", p.samples_skipped}});
  }
  const fs::path prefix(args.output_prefix);
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  io::WriteFileAtomic(args.output_prefix + ".csv", csv);
  WriteJson(args.output_prefix + ".json",
            json{{"provenance", provenance}, {"args", args_json}, {"rows", rows}});
  if (args.plot) {
    const std::string title = std::string(LevelName(args.level)) + "-level " +
                              std::string(CoefficientName(args.coefficient));
    std::string svg = CurveSvg(curve, title, x_label, "correlation");
    svg.insert(svg.find('\n') + 1,
               "<!-- " + ProvenanceLine(provenance).substr(2) + " -->\n");
    io::WriteFileAtomic(args.output_prefix + ".svg", svg);
  }
  for (const auto& p : curve) {
    if (p.samples_skipped > 0) {
      log << "note: size " << p.size << ": " << p.samples_skipped
          << " sample(s) skipped (undefined correlation)\n";
    }
  }
  log << "wrote " << args.output_prefix << ".csv (" << curve.size()
      << " rows)\n";
  return curve;
}

std::vector<MarginRow> CmdMargin(const std::vector<std::string>& metric_files,
                                 const RunConfig& config,
                                 const std::string& output_json,
                                 std::ostream& out) {
  ValidateConfig(config, true, false, false);
  const EvalDataset dataset = LoadDataset(config.dataset);
  const auto types = dataset.SystemTypes();
  const bool has_reference =
      std::any_of(types.begin(), types.end(), [](const auto& kv) {
        return kv.second == SummarizerType::kReference;
      });
  if (!has_reference) {
    throw ValidationError("dataset " + config.dataset +
                          " has no reference-type candidates");
  }

  auto margin_of = [&](const ScoreMatrix& m) {
    const std::vector<Cell> means = m.SystemMeans();
    std::map<std::string, double> scores;
    for (std::size_t i = 0; i < m.systems.size(); ++i) {
      if (means[i] && types.count(m.systems[i])) {
        scores[m.systems[i]] = *means[i];
      }
    }
    return PeerReferenceMargin(scores, types);
  };

  std::vector<MarginRow> rows;
  for (const auto& path : metric_files) {
    const ScoreMatrix m = LoadScoreMatrix(path);
    rows.push_back({MetricLabel(m, path), margin_of(m)});
  }
  rows.push_back({"responsiveness", margin_of(JudgmentMatrix(dataset))});

  const json provenance = Provenance(
      HashWith(config, json{{"metrics", metric_files}}), config.seed);
  out << ProvenanceLine(provenance) << '\n';
  std::vector<std::vector<std::string>> table{{"metric", "margin"}};
  for (const auto& row : rows) table.push_back({row.metric, Fixed(row.margin)});
  PrintTable(table, out);
  if (!output_json.empty()) {
    json rows_json = json::array();
    for (const auto& row : rows) {
      rows_json.push_back(json{{"metric", row.metric}, {"margin", row.margin}});
    }
    WriteJson(output_json, json{{"provenance", provenance}, {"rows", rows_json}});
  }
  return rows;
}

std::vector<CoverageRow> CmdCoverage(const std::vector<std::string>& files,
                                     const RunConfig& config,
                                     const std::string& output_json,
                                     std::ostream& out) {
  if (files.empty()) throw PreconditionError("no mapping files given");
  std::vector<std::string> order;
  std::map<std::string, std::vector<SCUMapping>> groups;
  auto add = [&](const json& j, const std::string& where) {
    io::ExpectObject(j, where);
    std::string strategy = "all";
    if (j.contains("strategy")) strategy = io::StringField(j, "strategy", where);
    if (!groups.count(strategy)) order.push_back(strategy);
    groups[strategy].push_back(SCUMappingFromJson(j, where));
  };
  for (const auto& path : files) {
    const json j = io::ReadJsonFile(path);
    io::ExpectObject(j, path);
    if (j.contains("mappings")) {
      const json& list = j["mappings"];
      io::ExpectArray(list, path + ".mappings");
      for (std::size_t i = 0; i < list.size(); ++i) {
        add(list[i], path + ".mappings[" + std::to_string(i) + "]");
      }
    } else {
      add(j, path);
    }
  }

  std::vector<CoverageRow> rows;
  for (const auto& strategy : order) {
    const auto& mappings = groups[strategy];
    CoverageRow row;
    row.strategy = strategy;
    row.references = mappings.size();
    for (const auto& m : mappings) {
      row.avg_questions += static_cast<double>(m.qa_to_scu.size());
      row.qa_precision += QaPrecision(m);
      row.scu_coverage += ScuCoverage(m);
    }
    const double n = static_cast<double>(mappings.size());
    row.avg_questions /= n;
    row.qa_precision /= n;
    row.scu_coverage /= n;
    rows.push_back(row);
  }

  const json provenance =
      Provenance(HashWith(config, json{{"mappings", files}}), config.seed);
  out << ProvenanceLine(provenance) << '\n';
  std::vector<std::vector<std::string>> table{
      {"strategy", "references", "avg_qas", "qa_precision", "scu_coverage"}};
  for (const auto& row : rows) {
    table.push_back({row.strategy, std::to_string(row.references),
                     Fixed(row.avg_questions, 1), Fixed(row.qa_precision),
                     Fixed(row.scu_coverage)});
  }
  PrintTable(table, out);
  if (!output_json.empty()) {
    json rows_json = json::array();
    for (const auto& row : rows) {
      rows_json.push_back(json{{"strategy", row.strategy},
                               {"references", row.references},
                               {"avg_questions", row.avg_questions},
                               {"qa_precision", row.qa_precision},
                               {"scu_coverage", row.scu_coverage}});
    }
    WriteJson(output_json, json{{"provenance", provenance}, {"rows", rows_json}});
  }
  return rows;
}

void CmdValidate(const RunConfig& config, std::ostream& out) {
  ValidateConfig(config, true, !config.annotations_dir.empty(),
                 !config.questions_dir.empty());
  const EvalDataset dataset = LoadDataset(config.dataset);
  std::size_t references = 0;
  for (const auto& [id, type] : dataset.SystemTypes()) {
    references += type == SummarizerType::kReference;
  }
  out << "dataset: " << dataset.num_instances() << " instances, "
      << dataset.num_systems() << " systems (" << references
      << " reference-type), " << dataset.incomplete_systems.size()
      << " incomplete\n";
  if (!config.annotations_dir.empty()) {
    const AnnotationIndex annotations =
        LoadAnnotationDir(config.annotations_dir, dataset);
    std::size_t answers = 0;
    for (const auto& instance : dataset.instances) {
      for (const auto& reference : instance.references) {
        answers += SelectAnswers(reference,
                                 annotations.at({instance.instance_id,
                                                 reference.summarizer_id}),
                                 config.strategy)
                       .size();
      }
    }
    out << "annotations: " << annotations.size() << " references, " << answers
        << " " << StrategyName(config.strategy) << " answers\n";
  }
  if (!config.questions_dir.empty()) {
    std::size_t total = 0;
    for (const auto& q : LoadQuestions(dataset, config.questions_dir)) {
      for (const auto& set : q.sets) total += set.questions.size();
    }
    out << "questions: " << total << '\n';
  }
  out << "ok\n";
}

}  // namespace qaeval::cli
