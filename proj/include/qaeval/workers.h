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

// Out-of-process model backends.
//
// Backend specs accepted by MakeQuestionGenerator / MakeAnswerer:
//   template | oracle     built-in backends
//   human:<path>          answers from a human annotation file (QA only)
//   exec:<command>        spawn `sh -c <command>` workers speaking JSON lines
//                         on stdin/stdout, one per parallel slot
//   http://host:port/path POST one JSON request per call

#ifndef QAEVAL_WORKERS_H_
#define QAEVAL_WORKERS_H_

#include <memory>
#include <string>

#include "json.hpp"
#include "qaeval/backends.h"

namespace qaeval {

struct TransportOptions {
  int parallelism = 1;
  double timeout_seconds = 300.0;
};

// Sends one request object and returns the response object.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual nlohmann::json Call(const nlohmann::json& request,
                              const std::string& request_id) = 0;
};

// Pool of `sh -c command` worker processes, spawned lazily up to
// options.parallelism. Each worker is handshaken before first use; a worker
// that times out, exits or breaks protocol is killed and replaced.
class ProcessTransport : public Transport {
 public:
  ProcessTransport(std::string command, TransportOptions options);
  ~ProcessTransport() override;

  nlohmann::json Call(const nlohmann::json& request,
                      const std::string& request_id) override;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

class HttpTransport : public Transport {
 public:
  HttpTransport(const std::string& url, TransportOptions options);
  ~HttpTransport() override;

  nlohmann::json Call(const nlohmann::json& request,
                      const std::string& request_id) override;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

class RemoteQuestionGenerator : public QGBackend {
 public:
  RemoteQuestionGenerator(std::string name, std::shared_ptr<Transport> transport)
      : name_(std::move(name)), transport_(std::move(transport)) {}
  std::string name() const override { return name_; }
  std::string Generate(const QGRequest& request,
                       const std::string& request_id) override;

 private:
  std::string name_;
  std::shared_ptr<Transport> transport_;
};

class RemoteAnswerer : public QABackend {
 public:
  RemoteAnswerer(std::string name, std::shared_ptr<Transport> transport)
      : name_(std::move(name)), transport_(std::move(transport)) {}
  std::string name() const override { return name_; }
  Prediction Answer(const QARequest& request,
                    const std::string& request_id) override;

 private:
  std::string name_;
  std::shared_ptr<Transport> transport_;
};

// Throws PreconditionError for an unrecognized spec.
std::shared_ptr<QGBackend> MakeQuestionGenerator(const std::string& spec,
                                                 const TransportOptions& options);
std::shared_ptr<QABackend> MakeAnswerer(const std::string& spec,
                                        const TransportOptions& options);

// True for specs served out of process (worth caching).
bool IsRemoteSpec(const std::string& spec);

}  // namespace qaeval

#endif  // QAEVAL_WORKERS_H_
