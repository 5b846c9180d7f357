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

#ifndef QAEVAL_SCORE_MATRIX_H_
#define QAEVAL_SCORE_MATRIX_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qaeval {

using Cell = std::optional<double>;

// Systems x instances grid of scores; a missing cell is std::nullopt, never 0.
struct ScoreMatrix {
  std::string metric;
  std::vector<std::string> systems;
  std::vector<std::string> instances;
  std::vector<std::vector<Cell>> values;  // values[system][instance]

  static ScoreMatrix Empty(std::string metric, std::vector<std::string> systems,
                           std::vector<std::string> instances);

  std::size_t num_systems() const { return systems.size(); }
  std::size_t num_instances() const { return instances.size(); }
  const Cell& at(std::size_t system, std::size_t instance) const {
    return values[system][instance];
  }
  Cell& at(std::size_t system, std::size_t instance) {
    return values[system][instance];
  }

  std::optional<std::size_t> SystemIndex(const std::string& id) const;
  std::optional<std::size_t> InstanceIndex(const std::string& id) const;
  std::size_t MissingCount() const;

  // Throws ValidationError if the grid does not match the label lists or a
  // label repeats.
  void Validate() const;

  // Keeps the given instance columns, in the given order.
  ScoreMatrix SelectInstances(const std::vector<std::size_t>& columns) const;
  // Keeps the named systems, in the given order. Unknown names throw.
  ScoreMatrix SelectSystems(const std::vector<std::string>& ids) const;

  // Per-system mean over present cells; nullopt when a row is all missing.
  std::vector<Cell> SystemMeans() const;

  friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;
};

// {"metric": str, "systems": [str], "instances": [str], "values": [[num|null]]}
nlohmann::json ScoreMatrixToJson(const ScoreMatrix& matrix);
ScoreMatrix ScoreMatrixFromJson(const nlohmann::json& j);
ScoreMatrix LoadScoreMatrix(const std::string& path);

// Reorders `other` to `reference`'s system and instance order. Throws
// ValidationError naming the offending labels when the label sets differ.
ScoreMatrix AlignTo(const ScoreMatrix& reference, const ScoreMatrix& other);

}  // namespace qaeval

#endif  // QAEVAL_SCORE_MATRIX_H_
