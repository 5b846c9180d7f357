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

#include "qaeval/corpus.h"

#include <cmath>

#include "qaeval/errors.h"
#include "qaeval/io.h"
#include "qaeval/text.h"

namespace qaeval {

using nlohmann::json;

namespace {

std::string Where(std::size_t instance, const char* list, std::size_t index) {
  return "instances[" + std::to_string(instance) + "]." + list + "[" +
         std::to_string(index) + "]";
}

Summary SummaryFromJson(const json& j, const std::string& where,
                        std::optional<SummarizerType> forced_type) {
  Summary s;
  s.summarizer_id = io::StringField(j, "summarizer_id", where);
  s.text = io::StringField(j, "text", where);
  if (forced_type) {
    s.summarizer_type = *forced_type;
  } else {
    const std::string type = io::StringField(j, "summarizer_type", where);
    if (type == "peer") {
      s.summarizer_type = SummarizerType::kPeer;
    } else if (type == "reference") {
      s.summarizer_type = SummarizerType::kReference;
    } else {
      throw FormatError(where + ".summarizer_type",
                        "expected \"peer\" or \"reference\", got \"" + type +
                            "\"");
    }
  }
  if (auto it = j.find("sentences"); it != j.end()) {
    io::ExpectArray(*it, where + ".sentences");
    std::vector<std::string> sentences;
    for (std::size_t k = 0; k < it->size(); ++k) {
      if (!(*it)[k].is_string()) {
        throw FormatError(where + ".sentences[" + std::to_string(k) + "]",
                          "expected string");
      }
      sentences.push_back((*it)[k].get<std::string>());
    }
    s.sentences = std::move(sentences);
  }
  return s;
}

json SummaryToJson(const Summary& s, bool with_type) {
  json j{{"summarizer_id", s.summarizer_id}, {"text", s.text}};
  if (with_type) {
    j["summarizer_type"] = std::string(SummarizerTypeName(s.summarizer_type));
  }
  if (s.sentences) j["sentences"] = *s.sentences;
  return j;
}

void ValidateSummary(const Summary& s, const std::string& instance_id,
                     const char* role, bool allow_empty_text) {
  const std::string where =
      "instance \"" + instance_id + "\" " + role + " \"" + s.summarizer_id +
      "\"";
  if (s.summarizer_id.empty()) {
    throw ValidationError("instance \"" + instance_id + "\" " + role +
                          ": empty summarizer_id");
  }
  if (!allow_empty_text && text::Trim(s.text).empty()) {
    throw ValidationError(where + ": empty text");
  }
  if (s.sentences) {
    std::string joined;
    for (const auto& sentence : *s.sentences) joined += sentence;
    if (text::StripAllWhitespace(joined) != text::StripAllWhitespace(s.text)) {
      throw ValidationError(where +
                            ": sentences do not concatenate to text");
    }
  }
}

void ValidateInstance(const EvalInstance& instance) {
  const std::string& id = instance.instance_id;
  if (id.empty()) throw ValidationError("instance with empty instance_id");
  if (instance.references.empty()) {
    throw ValidationError("instance \"" + id + "\": no references");
  }
  std::set<std::string> reference_ids;
  for (const auto& ref : instance.references) {
    ValidateSummary(ref, id, "reference", /*allow_empty_text=*/false);
    if (ref.summarizer_type != SummarizerType::kReference) {
      throw ValidationError("instance \"" + id + "\" reference \"" +
                            ref.summarizer_id + "\": not of reference type");
    }
    if (!reference_ids.insert(ref.summarizer_id).second) {
      throw ValidationError("instance \"" + id +
                            "\": duplicate reference summarizer_id \"" +
                            ref.summarizer_id + "\"");
    }
  }
  std::set<std::string> candidate_ids;
  for (const auto& candidate : instance.candidates) {
    // Systems may produce empty output; it scores 0 rather than failing.
    ValidateSummary(candidate, id, "candidate", /*allow_empty_text=*/true);
    if (!candidate_ids.insert(candidate.summarizer_id).second) {
      throw ValidationError("instance \"" + id +
                            "\": duplicate candidate summarizer_id \"" +
                            candidate.summarizer_id + "\"");
    }
  }
  for (const auto& [system, value] : instance.judgments) {
    if (!candidate_ids.count(system)) {
      throw ValidationError("instance \"" + id + "\": judgments for \"" +
                            system + "\" which is not a candidate");
    }
    if (!std::isfinite(value)) {
      throw ValidationError("instance \"" + id + "\": judgment for \"" +
                            system + "\" is not finite");
    }
  }
}

}  // namespace

std::string_view SummarizerTypeName(SummarizerType type) {
  return type == SummarizerType::kReference ? "reference" : "peer";
}

const Summary* EvalInstance::FindCandidate(
    std::string_view summarizer_id) const {
  for (const auto& candidate : candidates) {
    if (candidate.summarizer_id == summarizer_id) return &candidate;
  }
  return nullptr;
}

std::vector<std::string> EvalDataset::instance_ids() const {
  std::vector<std::string> ids;
  ids.reserve(instances.size());
  for (const auto& instance : instances) ids.push_back(instance.instance_id);
  return ids;
}

const EvalInstance* EvalDataset::FindInstance(
    std::string_view instance_id) const {
  for (const auto& instance : instances) {
    if (instance.instance_id == instance_id) return &instance;
  }
  return nullptr;
}

std::map<std::string, SummarizerType> EvalDataset::SystemTypes() const {
  std::map<std::string, SummarizerType> types;
  for (const auto& instance : instances) {
    for (const auto& candidate : instance.candidates) {
      auto [it, inserted] =
          types.emplace(candidate.summarizer_id, candidate.summarizer_type);
      if (!inserted && it->second != candidate.summarizer_type) {
        throw ValidationError("system \"" + candidate.summarizer_id +
                              "\" is typed inconsistently across instances");
      }
    }
  }
  return types;
}

EvalDataset BuildDataset(std::vector<EvalInstance> instances) {
  EvalDataset dataset;
  std::set<std::string> instance_ids;
  std::set<std::string> seen_systems;
  for (const auto& instance : instances) {
    ValidateInstance(instance);
    if (!instance_ids.insert(instance.instance_id).second) {
      throw ValidationError("duplicate instance_id \"" + instance.instance_id +
                            "\"");
    }
    for (const auto& candidate : instance.candidates) {
      if (seen_systems.insert(candidate.summarizer_id).second) {
        dataset.system_ids.push_back(candidate.summarizer_id);
      }
    }
  }
  for (const auto& system : dataset.system_ids) {
    for (const auto& instance : instances) {
      if (instance.FindCandidate(system) == nullptr) {
        dataset.incomplete_systems.insert(system);
        break;
      }
    }
  }
  dataset.instances = std::move(instances);
  return dataset;
}

EvalDataset DatasetFromJson(const json& j) {
  const json& instances = io::Field(j, "instances", "dataset");
  io::ExpectArray(instances, "instances");
  std::vector<EvalInstance> parsed;
  parsed.reserve(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const std::string where = "instances[" + std::to_string(i) + "]";
    const json& item = instances[i];
    EvalInstance instance;
    instance.instance_id = io::StringField(item, "instance_id", where);

    const json& references = io::Field(item, "references", where);
    io::ExpectArray(references, where + ".references");
    for (std::size_t r = 0; r < references.size(); ++r) {
      instance.references.push_back(SummaryFromJson(
          references[r], Where(i, "references", r), SummarizerType::kReference));
    }

    const json& candidates = io::Field(item, "candidates", where);
    io::ExpectArray(candidates, where + ".candidates");
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      instance.candidates.push_back(
          SummaryFromJson(candidates[c], Where(i, "candidates", c), {}));
    }

    const json& judgments = io::Field(item, "judgments", where);
    io::ExpectObject(judgments, where + ".judgments");
    for (const auto& [system, value] : judgments.items()) {
      if (!value.is_number()) {
        throw FormatError(where + ".judgments." + system, "expected number");
      }
      instance.judgments[system] = value.get<double>();
    }
    parsed.push_back(std::move(instance));
  }
  return BuildDataset(std::move(parsed));
}

json DatasetToJson(const EvalDataset& dataset) {
  json instances = json::array();
  for (const auto& instance : dataset.instances) {
    json references = json::array();
    for (const auto& ref : instance.references) {
      references.push_back(SummaryToJson(ref, /*with_type=*/false));
    }
    json candidates = json::array();
    for (const auto& candidate : instance.candidates) {
      candidates.push_back(SummaryToJson(candidate, /*with_type=*/true));
    }
    json judgments = json::object();
    for (const auto& [system, value] : instance.judgments) {
      judgments[system] = value;
    }
    instances.push_back(json{{"instance_id", instance.instance_id},
                             {"references", std::move(references)},
                             {"candidates", std::move(candidates)},
                             {"judgments", std::move(judgments)}});
  }
  return json{{"instances", std::move(instances)}};
}

EvalDataset LoadDataset(const std::string& path) {
  return DatasetFromJson(io::ReadJsonFile(path));
}

ScoreMatrix JudgmentMatrix(const EvalDataset& dataset) {
  ScoreMatrix m = ScoreMatrix::Empty("responsiveness", dataset.system_ids,
                                     dataset.instance_ids());
  for (std::size_t i = 0; i < dataset.system_ids.size(); ++i) {
    for (std::size_t j = 0; j < dataset.instances.size(); ++j) {
      const auto& judgments = dataset.instances[j].judgments;
      if (auto it = judgments.find(dataset.system_ids[i]);
          it != judgments.end()) {
        m.values[i][j] = it->second;
      }
    }
  }
  return m;
}

}  // namespace qaeval
