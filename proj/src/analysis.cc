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

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "qaeval/errors.h"
#include "qaeval/io.h"
#include "qaeval/parallel.h"
#include "qaeval/random.h"

namespace qaeval {

using nlohmann::json;

namespace {

constexpr double kZ95 = 1.96;

CurvePoint CollectSamples(int size, const std::vector<std::optional<double>>& samples) {
  std::vector<double> values;
  std::size_t skipped = 0;
  for (const auto& v : samples) {
    if (v) {
      values.push_back(*v);
    } else {
      ++skipped;
    }
  }
  if (values.empty()) {
    throw DegenerateInputError("every sample of size " + std::to_string(size) +
                               " had an undefined correlation");
  }
  return SummarizeSamples(size, values, skipped);
}

}  // namespace

std::string_view LevelName(Level level) {
  return level == Level::kSummary ? "summary" : "system";
}

Level ParseLevel(std::string_view name) {
  if (name == "summary") return Level::kSummary;
  if (name == "system") return Level::kSystem;
  throw PreconditionError("unknown correlation level \"" + std::string(name) +
                          "\" (expected summary or system)");
}

CorrelationReport SummaryLevel(const ScoreMatrix& x, const ScoreMatrix& y,
                               Coefficient coefficient) {
  const ScoreMatrix aligned = AlignTo(x, y);
  CorrelationReport report;
  report.level = Level::kSummary;
  report.coefficient = coefficient;
  double sum = 0.0;
  for (std::size_t j = 0; j < x.num_instances(); ++j) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < x.num_systems(); ++i) {
      const Cell& a = x.at(i, j);
      const Cell& b = aligned.at(i, j);
      if (!a || !b) continue;
      xs.push_back(*a);
      ys.push_back(*b);
    }
    if (xs.size() < 2) {
      ++report.instances_skipped;
      continue;
    }
    try {
      sum += Correlate(coefficient, xs, ys);
      ++report.instances_used;
    } catch (const DegenerateInputError&) {
      ++report.instances_skipped;
    }
  }
  if (report.instances_used == 0) {
    throw DegenerateInputError("summary-level correlation undefined on every "
                               "instance");
  }
  report.value = sum / static_cast<double>(report.instances_used);
  return report;
}

double CorrelateMeans(const std::vector<Cell>& x_means,
                      const std::vector<Cell>& y_means,
                      Coefficient coefficient) {
  if (x_means.size() != y_means.size()) {
    throw PreconditionError("system mean vectors differ in length");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < x_means.size(); ++i) {
    if (!x_means[i] || !y_means[i]) continue;
    xs.push_back(*x_means[i]);
    ys.push_back(*y_means[i]);
  }
  if (xs.size() < 2) {
    throw DegenerateInputError("fewer than two systems with scores");
  }
  return Correlate(coefficient, xs, ys);
}

CorrelationReport SystemLevel(const ScoreMatrix& x, const ScoreMatrix& y,
                              Coefficient coefficient) {
  const ScoreMatrix aligned = AlignTo(x, y);
  CorrelationReport report;
  report.level = Level::kSystem;
  report.coefficient = coefficient;
  report.value = CorrelateMeans(x.SystemMeans(), aligned.SystemMeans(),
                                coefficient);
  report.instances_used = x.num_instances();
  return report;
}

CorrelationReport CorrelateAt(Level level, const ScoreMatrix& x,
                              const ScoreMatrix& y, Coefficient coefficient) {
  return level == Level::kSummary ? SummaryLevel(x, y, coefficient)
                                  : SystemLevel(x, y, coefficient);
}

CurvePoint SummarizeSamples(int size, const std::vector<double>& values,
                            std::size_t skipped) {
  CurvePoint point;
  point.size = size;
  point.samples_used = values.size();
  point.samples_skipped = skipped;
  if (values.empty()) return point;
  if (std::all_of(values.begin(), values.end(),
                  [&](double v) { return v == values.front(); })) {
    point.mean = point.ci_low = point.ci_high = values.front();
    return point;
  }
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  point.mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - point.mean) * (v - point.mean);
  const double std_dev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const double half = kZ95 * std_dev / std::sqrt(n);
  point.ci_low = point.mean - half;
  point.ci_high = point.mean + half;
  return point;
}

std::vector<CurvePoint> DownsampleInstances(const ScoreMatrix& x,
                                            const ScoreMatrix& y,
                                            const CurveOptions& options) {
  const ScoreMatrix aligned = AlignTo(x, y);
  const std::size_t m = x.num_instances();
  if (options.n_samples < 1) throw PreconditionError("n_samples must be >= 1");
  for (int k : options.sizes) {
    if (k < 1 || static_cast<std::size_t>(k) > m) {
      throw PreconditionError("cannot sample " + std::to_string(k) +
                              " of " + std::to_string(m) + " instances");
    }
  }
  const std::vector<Cell> full_y_means = aligned.SystemMeans();

  std::vector<CurvePoint> curve;
  for (int k : options.sizes) {
    std::vector<std::optional<double>> samples(options.n_samples);
    ParallelFor(samples.size(), options.parallelism, [&](std::size_t s) {
      std::mt19937_64 rng(DeriveSeed(options.seed, {static_cast<uint64_t>(k), s}));
      const auto columns = SampleWithoutReplacement(rng, m, k);
      const ScoreMatrix xs = x.SelectInstances(columns);
      try {
        if (options.level == Level::kSystem && !options.restrict_judgments) {
          samples[s] =
              CorrelateMeans(xs.SystemMeans(), full_y_means, options.coefficient);
        } else {
          samples[s] = CorrelateAt(options.level, xs,
                                   aligned.SelectInstances(columns),
                                   options.coefficient)
                           .value;
        }
      } catch (const DegenerateInputError&) {
        samples[s].reset();
      }
    });
    curve.push_back(CollectSamples(k, samples));
  }
  return curve;
}

std::vector<CurvePoint> ReferenceCurve(
    const std::vector<std::size_t>& reference_counts,
    const ScoreMatrix& judgments, const RescoreFn& rescore,
    const CurveOptions& options) {
  if (reference_counts.size() != judgments.num_instances()) {
    throw PreconditionError("reference counts do not match judgment instances");
  }
  if (options.n_samples < 1) throw PreconditionError("n_samples must be >= 1");
  const std::size_t min_refs =
      reference_counts.empty()
          ? 0
          : *std::min_element(reference_counts.begin(), reference_counts.end());
  for (int r : options.sizes) {
    if (r < 1 || static_cast<std::size_t>(r) > min_refs) {
      throw PreconditionError("cannot sample " + std::to_string(r) +
                              " references; some instance has only " +
                              std::to_string(min_refs));
    }
  }

  std::vector<CurvePoint> curve;
  for (int r : options.sizes) {
    std::vector<std::optional<double>> samples(options.n_samples);
    ParallelFor(samples.size(), options.parallelism, [&](std::size_t s) {
      ScoreMatrix x = ScoreMatrix::Empty("rescored", judgments.systems,
                                         judgments.instances);
      for (std::size_t j = 0; j < reference_counts.size(); ++j) {
        std::mt19937_64 rng(
            DeriveSeed(options.seed, {static_cast<uint64_t>(r), s, j}));
        const auto refs = SampleWithoutReplacement(rng, reference_counts[j], r);
        const std::vector<Cell> column = rescore(j, refs);
        if (column.size() != judgments.num_systems()) {
          throw PreconditionError("rescore returned " +
                                  std::to_string(column.size()) +
                                  " scores for " +
                                  std::to_string(judgments.num_systems()) +
                                  " systems");
        }
        for (std::size_t i = 0; i < column.size(); ++i) x.at(i, j) = column[i];
      }
      try {
        samples[s] =
            CorrelateAt(options.level, x, judgments, options.coefficient).value;
      } catch (const DegenerateInputError&) {
        samples[s].reset();
      }
    });
    curve.push_back(CollectSamples(r, samples));
  }
  return curve;
}

double PeerReferenceMargin(const std::map<std::string, double>& scores,
                           const std::map<std::string, SummarizerType>& types) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool any_peer = false;
  bool any_reference = false;
  for (const auto& [id, score] : scores) {
    auto it = types.find(id);
    if (it == types.end()) {
      throw PreconditionError("no summarizer type for \"" + id + "\"");
    }
    (it->second == SummarizerType::kPeer ? any_peer : any_reference) = true;
    lo = std::min(lo, score);
    hi = std::max(hi, score);
  }
  if (!any_peer || !any_reference) {
    throw PreconditionError("margin needs at least one peer and one reference");
  }
  if (!(hi > lo)) {
    throw DegenerateInputError("all summarizers have the same score");
  }
  double min_reference = std::numeric_limits<double>::infinity();
  double max_peer = -std::numeric_limits<double>::infinity();
  for (const auto& [id, score] : scores) {
    const double scaled = (score - lo) / (hi - lo);
    if (types.at(id) == SummarizerType::kReference) {
      min_reference = std::min(min_reference, scaled);
    } else {
      max_peer = std::max(max_peer, scaled);
    }
  }
  return min_reference - max_peer;
}

SCUMapping SCUMappingFromJson(const json& j, const std::string& where) {
  SCUMapping mapping;
  const json& scus = io::Field(j, "scus", where);
  io::ExpectArray(scus, where + ".scus");
  std::set<std::string> universe;
  for (std::size_t i = 0; i < scus.size(); ++i) {
    if (!scus[i].is_string()) {
      throw FormatError(where + ".scus[" + std::to_string(i) + "]",
                        "expected string");
    }
    const std::string id = scus[i].get<std::string>();
    if (!universe.insert(id).second) {
      throw ValidationError(where + ": duplicate SCU \"" + id + "\"");
    }
    mapping.scus.push_back(id);
  }
  const json& qa = io::Field(j, "mapping", where);
  io::ExpectObject(qa, where + ".mapping");
  for (const auto& [question_id, scu] : qa.items()) {
    if (scu.is_null()) {
      mapping.qa_to_scu[question_id] = std::nullopt;
      continue;
    }
    if (!scu.is_string()) {
      throw FormatError(where + ".mapping." + question_id,
                        "expected SCU id or null");
    }
    const std::string id = scu.get<std::string>();
    if (!universe.count(id)) {
      throw ValidationError(where + ": question \"" + question_id +
                            "\" maps to unknown SCU \"" + id + "\"");
    }
    mapping.qa_to_scu[question_id] = id;
  }
  return mapping;
}

double QaPrecision(const SCUMapping& mapping) {
  if (mapping.qa_to_scu.empty()) {
    throw PreconditionError("QA precision of an empty mapping");
  }
  std::size_t mapped = 0;
  for (const auto& [question, scu] : mapping.qa_to_scu) mapped += scu ? 1 : 0;
  return static_cast<double>(mapped) /
         static_cast<double>(mapping.qa_to_scu.size());
}

double ScuCoverage(const SCUMapping& mapping) {
  if (mapping.scus.empty()) {
    throw PreconditionError("SCU coverage with an empty SCU set");
  }
  std::set<std::string> hit;
  for (const auto& [question, scu] : mapping.qa_to_scu) {
    if (scu) hit.insert(*scu);
  }
  std::size_t covered = 0;
  for (const auto& scu : mapping.scus) covered += hit.count(scu);
  return static_cast<double>(covered) /
         static_cast<double>(mapping.scus.size());
}

}  // namespace qaeval
