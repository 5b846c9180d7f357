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

// Backend wire protocol. One JSON object per line (or per HTTP POST body).
//
//   handshake  {"id": "hello", "task": "hello", "protocol": "qaeval/1"}
//           -> {"id": "hello", "protocol": "qaeval/1"}
//   generate   {"id", "task": "generate", "sentence", "answer_start",
//               "answer_end", "answer_text"[, "answer_label"]}
//           -> {"id", "question"}
//   answer     {"id", "task": "answer", "context", "question"[, "gold"]}
//           -> {"id", "answer": str|null, "score_answer", "score_null"}
//
// Offsets are code point indices. A worker may reply {"id", "error": str}.
// "gold" and "answer_label" are optional metadata that model backends ignore.

#ifndef QAEVAL_PROTOCOL_H_
#define QAEVAL_PROTOCOL_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "qaeval/backends.h"

namespace qaeval::protocol {

inline constexpr std::string_view kVersion = "qaeval/1";
inline constexpr std::string_view kHandshakeId = "hello";

nlohmann::json HandshakeRequest();
// Throws BackendError unless `response` acknowledges kVersion.
void CheckHandshake(const nlohmann::json& response);

// Request bodies without the "id" field; these also feed cache keys.
nlohmann::json GenerateBody(const QGRequest& request);
nlohmann::json AnswerBody(const QARequest& request);

nlohmann::json WithId(nlohmann::json body, const std::string& id);

// Validate a response: matching id, no "error", required fields typed.
std::string ParseGenerateResponse(const nlohmann::json& response,
                                  const std::string& id);
Prediction ParseAnswerResponse(const nlohmann::json& response,
                               const std::string& id);

QGRequest ParseGenerateRequest(const nlohmann::json& request);
QARequest ParseAnswerRequest(const nlohmann::json& request);

nlohmann::json GenerateResponse(const std::string& id,
                                const std::string& question);
nlohmann::json AnswerResponse(const std::string& id,
                              const Prediction& prediction);

// Serves one request line with in-process backends; used by test workers
// and servers. Returns the response object (errors become {"id","error"}).
nlohmann::json Serve(const nlohmann::json& request, QGBackend* qg,
                     QABackend* qa);

}  // namespace qaeval::protocol

#endif  // QAEVAL_PROTOCOL_H_
