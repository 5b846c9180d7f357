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

#include "qaeval/score_matrix.h"

#include <set>

#include "qaeval/errors.h"
#include "qaeval/io.h"

namespace qaeval {

using nlohmann::json;

namespace {

std::optional<std::size_t> IndexOf(const std::vector<std::string>& labels,
                                   const std::string& id) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == id) return i;
  }
  return std::nullopt;
}

void CheckUnique(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw ValidationError(std::string("duplicate ") + what + " \"" + label +
                            "\" in score matrix");
    }
  }
}

// Labels present in `a` but not in `b`, comma separated.
std::string Difference(const std::vector<std::string>& a,
                       const std::vector<std::string>& b) {
  const std::set<std::string> in_b(b.begin(), b.end());
  std::string out;
  for (const auto& label : a) {
    if (in_b.count(label)) continue;
    if (!out.empty()) out += ", ";
    out += label;
  }
  return out;
}

}  // namespace

ScoreMatrix ScoreMatrix::Empty(std::string metric,
                               std::vector<std::string> systems,
                               std::vector<std::string> instances) {
  ScoreMatrix m;
  m.metric = std::move(metric);
  m.values.assign(systems.size(), std::vector<Cell>(instances.size()));
  m.systems = std::move(systems);
  m.instances = std::move(instances);
  return m;
}

std::optional<std::size_t> ScoreMatrix::SystemIndex(
    const std::string& id) const {
  return IndexOf(systems, id);
}

std::optional<std::size_t> ScoreMatrix::InstanceIndex(
    const std::string& id) const {
  return IndexOf(instances, id);
}

std::size_t ScoreMatrix::MissingCount() const {
  std::size_t missing = 0;
  for (const auto& row : values) {
    for (const auto& cell : row) missing += cell.has_value() ? 0 : 1;
  }
  return missing;
}

void ScoreMatrix::Validate() const {
  if (values.size() != systems.size()) {
    throw ValidationError("score matrix \"" + metric + "\" has " +
                          std::to_string(values.size()) + " rows but " +
                          std::to_string(systems.size()) + " systems");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].size() != instances.size()) {
      throw ValidationError("score matrix \"" + metric + "\" row " +
                            systems[i] + " has " +
                            std::to_string(values[i].size()) +
                            " cells but " + std::to_string(instances.size()) +
                            " instances");
    }
  }
  CheckUnique(systems, "system");
  CheckUnique(instances, "instance");
}

ScoreMatrix ScoreMatrix::SelectInstances(
    const std::vector<std::size_t>& columns) const {
  ScoreMatrix out;
  out.metric = metric;
  out.systems = systems;
  for (std::size_t c : columns) out.instances.push_back(instances.at(c));
  out.values.resize(systems.size());
  for (std::size_t i = 0; i < systems.size(); ++i) {
    out.values[i].reserve(columns.size());
    for (std::size_t c : columns) out.values[i].push_back(values[i].at(c));
  }
  return out;
}

ScoreMatrix ScoreMatrix::SelectSystems(
    const std::vector<std::string>& ids) const {
  ScoreMatrix out;
  out.metric = metric;
  out.instances = instances;
  for (const auto& id : ids) {
    auto row = SystemIndex(id);
    if (!row) {
      throw ValidationError("system \"" + id + "\" not in matrix \"" +
                            metric + "\"");
    }
    out.systems.push_back(id);
    out.values.push_back(values[*row]);
  }
  return out;
}

std::vector<Cell> ScoreMatrix::SystemMeans() const {
  std::vector<Cell> means;
  means.reserve(values.size());
  for (const auto& row : values) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& cell : row) {
      if (!cell) continue;
      sum += *cell;
      ++n;
    }
    means.push_back(n == 0 ? Cell() : Cell(sum / static_cast<double>(n)));
  }
  return means;
}

json ScoreMatrixToJson(const ScoreMatrix& matrix) {
  json values = json::array();
  for (const auto& row : matrix.values) {
    json out_row = json::array();
    for (const auto& cell : row) {
      out_row.push_back(cell ? json(*cell) : json(nullptr));
    }
    values.push_back(std::move(out_row));
  }
  return json{{"metric", matrix.metric},
              {"systems", matrix.systems},
              {"instances", matrix.instances},
              {"values", std::move(values)}};
}

ScoreMatrix ScoreMatrixFromJson(const json& j) {
  ScoreMatrix m;
  m.metric = io::StringField(j, "metric", "matrix");
  const json& systems = io::Field(j, "systems", "matrix");
  const json& instances = io::Field(j, "instances", "matrix");
  const json& values = io::Field(j, "values", "matrix");
  io::ExpectArray(systems, "matrix.systems");
  io::ExpectArray(instances, "matrix.instances");
  io::ExpectArray(values, "matrix.values");
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (!systems[i].is_string()) {
      throw FormatError("matrix.systems[" + std::to_string(i) + "]",
                        "expected string");
    }
    m.systems.push_back(systems[i].get<std::string>());
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (!instances[i].is_string()) {
      throw FormatError("matrix.instances[" + std::to_string(i) + "]",
                        "expected string");
    }
    m.instances.push_back(instances[i].get<std::string>());
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string where = "matrix.values[" + std::to_string(i) + "]";
    io::ExpectArray(values[i], where);
    std::vector<Cell> row;
    for (std::size_t c = 0; c < values[i].size(); ++c) {
      const json& cell = values[i][c];
      if (cell.is_null()) {
        row.emplace_back();
      } else if (cell.is_number()) {
        row.emplace_back(cell.get<double>());
      } else {
        throw FormatError(where + "[" + std::to_string(c) + "]",
                          "expected number or null");
      }
    }
    m.values.push_back(std::move(row));
  }
  m.Validate();
  return m;
}

ScoreMatrix LoadScoreMatrix(const std::string& path) {
  return ScoreMatrixFromJson(io::ReadJsonFile(path));
}

ScoreMatrix AlignTo(const ScoreMatrix& reference, const ScoreMatrix& other) {
  const std::string missing_systems =
      Difference(reference.systems, other.systems);
  const std::string extra_systems =
      Difference(other.systems, reference.systems);
  const std::string missing_instances =
      Difference(reference.instances, other.instances);
  const std::string extra_instances =
      Difference(other.instances, reference.instances);
  if (!missing_systems.empty() || !extra_systems.empty() ||
      !missing_instances.empty() || !extra_instances.empty()) {
    std::string message = "label mismatch between \"" + reference.metric +
                          "\" and \"" + other.metric + "\":";
    if (!missing_systems.empty()) {
      message += " systems only in " + reference.metric + ": " +
                 missing_systems + ";";
    }
    if (!extra_systems.empty()) {
      message += " systems only in " + other.metric + ": " + extra_systems +
                 ";";
    }
    if (!missing_instances.empty()) {
      message += " instances only in " + reference.metric + ": " +
                 missing_instances + ";";
    }
    if (!extra_instances.empty()) {
      message += " instances only in " + other.metric + ": " +
                 extra_instances + ";";
    }
    throw ValidationError(message);
  }
  ScoreMatrix out = ScoreMatrix::Empty(other.metric, reference.systems,
                                       reference.instances);
  for (std::size_t i = 0; i < reference.systems.size(); ++i) {
    const std::size_t row = *other.SystemIndex(reference.systems[i]);
    for (std::size_t j = 0; j < reference.instances.size(); ++j) {
      const std::size_t col = *other.InstanceIndex(reference.instances[j]);
      out.values[i][j] = other.values[row][col];
    }
  }
  return out;
}

}  // namespace qaeval
