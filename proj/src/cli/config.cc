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

#include "qaeval/cli/config.h"

#include <cstdlib>
#include <filesystem>

#include "qaeval/cache.h"
#include "qaeval/errors.h"
#include "qaeval/io.h"

namespace qaeval::cli {

using nlohmann::json;

namespace {

Averaging ParseAveraging(const std::string& name) {
  if (name == "macro") return Averaging::kMacro;
  if (name == "micro") return Averaging::kMicro;
  throw PreconditionError("unknown averaging \"" + name +
                          "\" (expected macro or micro)");
}

template <typename T>
T Get(const json& value, const std::string& where) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw FormatError(where, "wrong value type");
  }
}

}  // namespace

json RunConfig::ToJson() const {
  return json{{"dataset", dataset},
              {"annotations_dir", annotations_dir},
              {"questions_dir", questions_dir},
              {"output_dir", output_dir},
              {"strategy", std::string(StrategyName(strategy))},
              {"qg_backend", qg_backend},
              {"qa_backend", qa_backend},
              {"verifier", verifier},
              {"cache_dir", cache_dir},
              {"seed", seed},
              {"parallelism", parallelism},
              {"timeout_seconds", timeout_seconds},
              {"max_attempts", max_attempts},
              {"averaging", averaging == Averaging::kMacro ? "macro" : "micro"},
              {"exclude_self_reference", exclude_self_reference}};
}

void RunConfig::Merge(const json& j, const std::string& source) {
  io::ExpectObject(j, source);
  for (const auto& [key, value] : j.items()) {
    const std::string where = source + "." + key;
    if (key == "dataset") {
      dataset = Get<std::string>(value, where);
    } else if (key == "annotations_dir") {
      annotations_dir = Get<std::string>(value, where);
    } else if (key == "questions_dir") {
      questions_dir = Get<std::string>(value, where);
    } else if (key == "output_dir") {
      output_dir = Get<std::string>(value, where);
    } else if (key == "strategy") {
      strategy = ParseStrategy(Get<std::string>(value, where));
    } else if (key == "qg_backend") {
      qg_backend = Get<std::string>(value, where);
    } else if (key == "qa_backend") {
      qa_backend = Get<std::string>(value, where);
    } else if (key == "verifier") {
      verifier = Get<std::string>(value, where);
    } else if (key == "cache_dir") {
      cache_dir = Get<std::string>(value, where);
    } else if (key == "seed") {
      seed = Get<uint64_t>(value, where);
    } else if (key == "parallelism") {
      parallelism = Get<int>(value, where);
    } else if (key == "timeout_seconds") {
      timeout_seconds = Get<double>(value, where);
    } else if (key == "max_attempts") {
      max_attempts = Get<int>(value, where);
    } else if (key == "averaging") {
      averaging = ParseAveraging(Get<std::string>(value, where));
    } else if (key == "exclude_self_reference") {
      exclude_self_reference = Get<bool>(value, where);
    } else {
      throw FormatError(where, "unknown configuration key");
    }
  }
}

std::string RunConfig::Hash() const { return Sha256Hex(ToJson().dump()); }

RunConfig ResolveConfig(const ConfigOverrides& o) {
  RunConfig config;
  if (o.config_file) {
    config.Merge(io::ReadJsonFile(*o.config_file), *o.config_file);
  }
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) {
    config.cache_dir = env;
  }
  if (o.dataset) config.dataset = *o.dataset;
  if (o.annotations_dir) config.annotations_dir = *o.annotations_dir;
  if (o.questions_dir) config.questions_dir = *o.questions_dir;
  if (o.output_dir) config.output_dir = *o.output_dir;
  if (o.strategy) config.strategy = ParseStrategy(*o.strategy);
  if (o.qg_backend) config.qg_backend = *o.qg_backend;
  if (o.qa_backend) config.qa_backend = *o.qa_backend;
  if (o.verifier) config.verifier = *o.verifier;
  if (o.cache_dir) config.cache_dir = *o.cache_dir;
  if (o.seed) config.seed = *o.seed;
  if (o.parallelism) config.parallelism = *o.parallelism;
  if (o.timeout_seconds) config.timeout_seconds = *o.timeout_seconds;
  if (o.max_attempts) config.max_attempts = *o.max_attempts;
  if (o.averaging) config.averaging = ParseAveraging(*o.averaging);
  if (o.exclude_self_reference) {
    config.exclude_self_reference = *o.exclude_self_reference;
  }
  return config;
}

void ValidateConfig(const RunConfig& config, bool need_dataset,
                    bool need_annotations, bool need_questions) {
  namespace fs = std::filesystem;
  auto require = [](const std::string& path, const char* what) {
    if (path.empty()) {
      throw ValidationError(std::string("no ") + what + " given");
    }
    if (!fs::exists(path)) {
      throw ValidationError(std::string(what) + " \"" + path +
                            "\" does not exist");
    }
  };
  if (need_dataset) require(config.dataset, "dataset");
  if (need_annotations) require(config.annotations_dir, "annotations_dir");
  if (need_questions) require(config.questions_dir, "questions_dir");
  if (config.parallelism < 1) {
    throw ValidationError("parallelism must be >= 1");
  }
  if (config.max_attempts < 1) {
    throw ValidationError("max_attempts must be >= 1");
  }
  if (!(config.timeout_seconds > 0.0)) {
    throw ValidationError("timeout_seconds must be positive");
  }
  if (config.verifier != "automatic") {
    if (config.verifier.rfind("human:", 0) != 0) {
      throw ValidationError("verifier must be \"automatic\" or human:<path>");
    }
    require(config.verifier.substr(6), "human verification file");
  }
}

json Provenance(const std::string& config_hash, uint64_t seed) {
  return json{{"config_hash", config_hash},
              {"toolkit_version", kToolkitVersion},
              {"seed", seed}};
}

}  // namespace qaeval::cli
