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

#include "qaeval/protocol.h"

#include <cmath>

#include "qaeval/errors.h"

namespace qaeval::protocol {

using nlohmann::json;

namespace {

void CheckId(const json& response, const std::string& id) {
  if (!response.is_object()) throw BackendError(id, "response is not an object");
  auto it = response.find("id");
  if (it == response.end() || !it->is_string() || *it != id) {
    throw BackendError(id, "response id mismatch: " + response.dump());
  }
  if (auto err = response.find("error"); err != response.end()) {
    throw BackendError(id, "worker error: " +
                               (err->is_string() ? err->get<std::string>()
                                                 : err->dump()));
  }
}

double Score(const json& response, const char* key, const std::string& id) {
  auto it = response.find(key);
  if (it == response.end() || !it->is_number()) {
    throw BackendError(id, std::string("response lacks numeric \"") + key +
                               "\"");
  }
  return it->get<double>();
}

const json& Required(const json& request, const char* key) {
  auto it = request.find(key);
  if (it == request.end()) {
    throw PreconditionError(std::string("request lacks \"") + key + "\"");
  }
  return *it;
}

}  // namespace

json HandshakeRequest() {
  return json{{"id", kHandshakeId}, {"task", "hello"}, {"protocol", kVersion}};
}

void CheckHandshake(const json& response) {
  const std::string id(kHandshakeId);
  CheckId(response, id);
  auto it = response.find("protocol");
  if (it == response.end() || *it != kVersion) {
    throw BackendError(id, "worker does not speak " + std::string(kVersion) +
                               ": " + response.dump());
  }
}

json GenerateBody(const QGRequest& request) {
  json body{{"task", "generate"},
            {"sentence", request.sentence},
            {"answer_start", request.answer_start},
            {"answer_end", request.answer_end},
            {"answer_text", request.answer_text}};
  if (!request.answer_label.empty()) body["answer_label"] = request.answer_label;
  return body;
}

json AnswerBody(const QARequest& request) {
  json body{{"task", "answer"},
            {"context", request.context},
            {"question", request.question}};
  if (request.gold) body["gold"] = *request.gold;
  return body;
}

json WithId(json body, const std::string& id) {
  body["id"] = id;
  return body;
}

std::string ParseGenerateResponse(const json& response, const std::string& id) {
  CheckId(response, id);
  auto it = response.find("question");
  if (it == response.end() || !it->is_string()) {
    throw BackendError(id, "response lacks string \"question\"");
  }
  return it->get<std::string>();
}

Prediction ParseAnswerResponse(const json& response, const std::string& id) {
  CheckId(response, id);
  Prediction p;
  auto it = response.find("answer");
  if (it == response.end()) throw BackendError(id, "response lacks \"answer\"");
  if (it->is_string()) {
    p.answer = it->get<std::string>();
  } else if (!it->is_null()) {
    throw BackendError(id, "\"answer\" must be a string or null");
  }
  p.score_answer = Score(response, "score_answer", id);
  p.score_null = Score(response, "score_null", id);
  return p;
}

QGRequest ParseGenerateRequest(const json& request) {
  QGRequest r;
  r.sentence = Required(request, "sentence").get<std::string>();
  r.answer_start = Required(request, "answer_start").get<std::size_t>();
  r.answer_end = Required(request, "answer_end").get<std::size_t>();
  r.answer_text = Required(request, "answer_text").get<std::string>();
  if (auto it = request.find("answer_label"); it != request.end()) {
    r.answer_label = it->get<std::string>();
  }
  return r;
}

QARequest ParseAnswerRequest(const json& request) {
  QARequest r;
  r.context = Required(request, "context").get<std::string>();
  r.question = Required(request, "question").get<std::string>();
  if (auto it = request.find("gold"); it != request.end() && it->is_string()) {
    r.gold = it->get<std::string>();
  }
  return r;
}

json GenerateResponse(const std::string& id, const std::string& question) {
  return json{{"id", id}, {"question", question}};
}

json AnswerResponse(const std::string& id, const Prediction& prediction) {
  return json{{"id", id},
              {"answer", prediction.answer ? json(*prediction.answer)
                                           : json(nullptr)},
              {"score_answer", prediction.score_answer},
              {"score_null", prediction.score_null}};
}

json Serve(const json& request, QGBackend* qg, QABackend* qa) {
  std::string id;
  try {
    id = Required(request, "id").get<std::string>();
    const std::string task = Required(request, "task").get<std::string>();
    if (task == "hello") {
      return json{{"id", id}, {"protocol", kVersion}};
    }
    if (task == "generate" && qg != nullptr) {
      return GenerateResponse(id, qg->Generate(ParseGenerateRequest(request), id));
    }
    if (task == "answer" && qa != nullptr) {
      return AnswerResponse(id, qa->Answer(ParseAnswerRequest(request), id));
    }
    return json{{"id", id}, {"error", "unsupported task \"" + task + "\""}};
  } catch (const std::exception& e) {
    return json{{"id", id}, {"error", e.what()}};
  }
}

}  // namespace qaeval::protocol
