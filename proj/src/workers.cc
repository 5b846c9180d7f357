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

#include "qaeval/workers.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <mutex>
#include <vector>

#include "httplib.h"
#include "qaeval/errors.h"
#include "qaeval/protocol.h"
#include "qaeval/scoring.h"

extern char** environ;

namespace qaeval {

using nlohmann::json;

namespace {

// One spawned worker with line-oriented pipes.
class WorkerProcess {
 public:
  WorkerProcess(const std::string& command, const std::string& request_id) {
    int to_child[2];
    int from_child[2];
    if (::pipe2(to_child, O_CLOEXEC) != 0) {
      throw BackendError(request_id, std::string("pipe: ") + std::strerror(errno));
    }
    if (::pipe2(from_child, O_CLOEXEC) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw BackendError(request_id, std::string("pipe: ") + std::strerror(errno));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);
    // Own process group, so a kill also reaches whatever the shell started.
    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP);
    posix_spawnattr_setpgroup(&attr, 0);
    const char* argv[] = {"sh", "-c", command.c_str(), nullptr};
    const int rc = ::posix_spawn(&pid_, "/bin/sh", &actions, &attr,
                                 const_cast<char* const*>(argv), environ);
    posix_spawnattr_destroy(&attr);
    posix_spawn_file_actions_destroy(&actions);
    ::close(to_child[0]);
    ::close(from_child[1]);
    in_ = to_child[1];
    out_ = from_child[0];
    if (rc != 0) {
      ::close(in_);
      ::close(out_);
      pid_ = -1;
      throw BackendError(request_id,
                         "cannot spawn worker: " + std::string(std::strerror(rc)));
    }
  }

  ~WorkerProcess() {
    if (in_ >= 0) ::close(in_);
    if (out_ >= 0) ::close(out_);
    if (pid_ > 0) {
      // Closing stdin asks the worker to exit; give it a moment first.
      for (int i = 0; i < 20; ++i) {
        if (::waitpid(pid_, nullptr, WNOHANG) == pid_) return;
        ::usleep(5000);
      }
      ::kill(-pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
    }
  }

  WorkerProcess(const WorkerProcess&) = delete;
  WorkerProcess& operator=(const WorkerProcess&) = delete;

  json Call(const json& request, const std::string& id, double timeout) {
    std::string line = request.dump();
    line.push_back('\n');
    std::size_t written = 0;
    while (written < line.size()) {
      const ssize_t n =
          ::write(in_, line.data() + written, line.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw BackendError(id, std::string("write to worker failed: ") +
                                   std::strerror(errno));
      }
      written += static_cast<std::size_t>(n);
    }
    const std::string response = ReadLine(id, timeout);
    json parsed = json::parse(response, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
      throw BackendError(id, "worker sent invalid JSON: " + response);
    }
    return parsed;
  }

 private:
  std::string ReadLine(const std::string& id, double timeout) {
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration<double>(timeout);
    while (true) {
      if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (remaining.count() <= 0) throw BackendError(id, "worker timed out");
      pollfd fd{out_, POLLIN, 0};
      const int ready = ::poll(&fd, 1, static_cast<int>(remaining.count()));
      if (ready < 0 && errno == EINTR) continue;
      if (ready <= 0) throw BackendError(id, "worker timed out");
      char chunk[4096];
      const ssize_t n = ::read(out_, chunk, sizeof(chunk));
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw BackendError(id, "worker exited");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  pid_t pid_ = -1;
  int in_ = -1;
  int out_ = -1;
  std::string buffer_;
};

struct ParsedUrl {
  std::string origin;  // scheme://host:port
  std::string path;
};

ParsedUrl ParseUrl(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw PreconditionError("invalid backend URL \"" + url + "\"");
  }
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

class ProcessTransport::Impl {
 public:
  Impl(std::string command, TransportOptions options)
      : command_(std::move(command)), options_(options) {
    // A dead worker must surface as EPIPE, not kill the toolkit.
    ::signal(SIGPIPE, SIG_IGN);
  }

  json Call(const json& request, const std::string& id) {
    std::unique_ptr<WorkerProcess> worker = Acquire(id);
    try {
      json response = worker->Call(request, id, options_.timeout_seconds);
      Release(std::move(worker));
      return response;
    } catch (...) {
      worker.reset();
      Release(nullptr);
      throw;
    }
  }

 private:
  std::unique_ptr<WorkerProcess> Acquire(const std::string& id) {
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] {
        return !idle_.empty() || live_ < std::max(1, options_.parallelism);
      });
      if (!idle_.empty()) {
        auto worker = std::move(idle_.back());
        idle_.pop_back();
        return worker;
      }
      ++live_;
    }
    try {
      auto worker = std::make_unique<WorkerProcess>(command_, id);
      protocol::CheckHandshake(worker->Call(
          protocol::HandshakeRequest(), std::string(protocol::kHandshakeId),
          options_.timeout_seconds));
      return worker;
    } catch (...) {
      Release(nullptr);
      throw;
    }
  }

  // nullptr gives the slot back after a failed worker was discarded.
  void Release(std::unique_ptr<WorkerProcess> worker) {
    {
      std::lock_guard lock(mu_);
      if (worker) {
        idle_.push_back(std::move(worker));
      } else {
        --live_;
      }
    }
    cv_.notify_one();
  }

  std::string command_;
  TransportOptions options_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::vector<std::unique_ptr<WorkerProcess>> idle_;
  int live_ = 0;
};

ProcessTransport::ProcessTransport(std::string command,
                                   TransportOptions options)
    : impl_(std::make_unique<Impl>(std::move(command), options)) {}

ProcessTransport::~ProcessTransport() = default;

json ProcessTransport::Call(const json& request, const std::string& request_id) {
  return impl_->Call(request, request_id);
}

class HttpTransport::Impl {
 public:
  Impl(const std::string& url, TransportOptions options)
      : url_(ParseUrl(url)), options_(options) {}

  json Call(const json& request, const std::string& id) {
    std::call_once(handshake_, [&] {
      try {
        protocol::CheckHandshake(Post(protocol::HandshakeRequest(),
                                      std::string(protocol::kHandshakeId)));
        handshake_ok_ = true;
      } catch (const BackendError& e) {
        handshake_error_ = e.what();
      }
    });
    if (!handshake_ok_) throw BackendError(id, handshake_error_);
    return Post(request, id);
  }

 private:
  json Post(const json& request, const std::string& id) {
    httplib::Client client(url_.origin);
    const auto seconds = static_cast<time_t>(options_.timeout_seconds);
    const auto usec = static_cast<time_t>(
        (options_.timeout_seconds - static_cast<double>(seconds)) * 1e6);
    client.set_connection_timeout(seconds, usec);
    client.set_read_timeout(seconds, usec);
    client.set_write_timeout(seconds, usec);
    auto result = client.Post(url_.path, request.dump(), "application/json");
    if (!result) {
      throw BackendError(id, "HTTP request to " + url_.origin + url_.path +
                                 " failed: " + httplib::to_string(result.error()));
    }
    if (result->status != 200) {
      throw BackendError(id, "HTTP status " + std::to_string(result->status));
    }
    json parsed = json::parse(result->body, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
      throw BackendError(id, "server sent invalid JSON");
    }
    return parsed;
  }

  ParsedUrl url_;
  TransportOptions options_;
  std::once_flag handshake_;
  bool handshake_ok_ = false;
  std::string handshake_error_;
};

HttpTransport::HttpTransport(const std::string& url, TransportOptions options)
    : impl_(std::make_unique<Impl>(url, options)) {}

HttpTransport::~HttpTransport() = default;

json HttpTransport::Call(const json& request, const std::string& request_id) {
  return impl_->Call(request, request_id);
}

std::string RemoteQuestionGenerator::Generate(const QGRequest& request,
                                              const std::string& request_id) {
  const json response = transport_->Call(
      protocol::WithId(protocol::GenerateBody(request), request_id), request_id);
  return protocol::ParseGenerateResponse(response, request_id);
}

Prediction RemoteAnswerer::Answer(const QARequest& request,
                                  const std::string& request_id) {
  const json response = transport_->Call(
      protocol::WithId(protocol::AnswerBody(request), request_id), request_id);
  return protocol::ParseAnswerResponse(response, request_id);
}

namespace {

std::shared_ptr<Transport> MakeTransport(const std::string& spec,
                                         const TransportOptions& options) {
  if (spec.rfind("exec:", 0) == 0) {
    return std::make_shared<ProcessTransport>(spec.substr(5), options);
  }
  if (spec.rfind("http://", 0) == 0) {
    return std::make_shared<HttpTransport>(spec, options);
  }
  return nullptr;
}

}  // namespace

bool IsRemoteSpec(const std::string& spec) {
  return spec.rfind("exec:", 0) == 0 || spec.rfind("http://", 0) == 0;
}

std::shared_ptr<QGBackend> MakeQuestionGenerator(
    const std::string& spec, const TransportOptions& options) {
  if (spec == "template") return std::make_shared<TemplateQuestionGenerator>();
  if (auto transport = MakeTransport(spec, options)) {
    return std::make_shared<RemoteQuestionGenerator>(spec, std::move(transport));
  }
  throw PreconditionError("unknown question generation backend \"" + spec +
                          "\" (expected template, exec:<command> or http://...)");
}

std::shared_ptr<QABackend> MakeAnswerer(const std::string& spec,
                                        const TransportOptions& options) {
  if (spec == "oracle") return std::make_shared<OracleAnswerer>();
  if (spec.rfind("human:", 0) == 0) {
    std::map<std::string, std::optional<std::string>> answers;
    for (const auto& [key, judgment] : LoadHumanAnnotations(spec.substr(6))) {
      answers[key] = judgment.answerable ? judgment.human_answer : std::nullopt;
    }
    return std::make_shared<HumanAnswerer>(spec, std::move(answers));
  }
  if (auto transport = MakeTransport(spec, options)) {
    return std::make_shared<RemoteAnswerer>(spec, std::move(transport));
  }
  throw PreconditionError("unknown question answering backend \"" + spec +
                          "\" (expected oracle, human:<path>, exec:<command> "
                          "or http://...)");
}

}  // namespace qaeval
