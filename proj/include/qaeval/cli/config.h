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

// Run configuration. Values resolve as flag > environment > config file >
// default. The only environment override is QAEVAL_CACHE_DIR.

#ifndef QAEVAL_CLI_CONFIG_H_
#define QAEVAL_CLI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "qaeval/answer_selection.h"
#include "qaeval/scoring.h"

namespace qaeval::cli {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr const char* kCacheDirEnv = "QAEVAL_CACHE_DIR";

struct RunConfig {
  std::string dataset;
  std::string annotations_dir;
  std::string questions_dir;
  std::string output_dir = ".";
  Strategy strategy = Strategy::kNpChunks;
  std::string qg_backend = "template";
  std::string qa_backend = "oracle";
  std::string verifier = "automatic";  // or "human:<path>"
  std::string cache_dir = ".qaeval-cache";
  uint64_t seed = 0;
  int parallelism = 1;
  double timeout_seconds = 300.0;
  int max_attempts = 2;
  Averaging averaging = Averaging::kMacro;
  bool exclude_self_reference = false;

  nlohmann::json ToJson() const;
  // Overlays keys present in `j`; unknown keys throw FormatError.
  void Merge(const nlohmann::json& j, const std::string& source);
  // SHA-256 of ToJson().
  std::string Hash() const;
};

// Command-line values; unset fields leave the lower layers alone.
struct ConfigOverrides {
  std::optional<std::string> config_file;
  std::optional<std::string> dataset;
  std::optional<std::string> annotations_dir;
  std::optional<std::string> questions_dir;
  std::optional<std::string> output_dir;
  std::optional<std::string> strategy;
  std::optional<std::string> qg_backend;
  std::optional<std::string> qa_backend;
  std::optional<std::string> verifier;
  std::optional<std::string> cache_dir;
  std::optional<uint64_t> seed;
  std::optional<int> parallelism;
  std::optional<double> timeout_seconds;
  std::optional<int> max_attempts;
  std::optional<std::string> averaging;
  std::optional<bool> exclude_self_reference;
};

RunConfig ResolveConfig(const ConfigOverrides& overrides);

// Checks that the named paths exist and numeric fields are in range.
// `need_*` select which paths the calling command requires.
void ValidateConfig(const RunConfig& config, bool need_dataset,
                    bool need_annotations, bool need_questions);

// {"config_hash", "toolkit_version", "seed"}
nlohmann::json Provenance(const std::string& config_hash, uint64_t seed);

}  // namespace qaeval::cli

#endif  // QAEVAL_CLI_CONFIG_H_
