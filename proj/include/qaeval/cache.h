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

// Persistent backend result cache.
//
// Key = SHA-256(backend name, protocol version, request body without id).
// Each key is one file <dir>/<key[0:2]>/<key>.json, created atomically
// (write a temporary file, then link(2) it into place). Entries are never
// overwritten; concurrent writers of the same key race benignly.

#ifndef QAEVAL_CACHE_H_
#define QAEVAL_CACHE_H_

#include <atomic>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qaeval/backends.h"

namespace qaeval {

std::string Sha256Hex(std::string_view data);

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  static std::string Key(std::string_view backend_name,
                         const nlohmann::json& request_body);

  std::optional<nlohmann::json> Get(const std::string& key) const;
  // Returns false when the key already existed (the stored value wins).
  bool Put(const std::string& key, const nlohmann::json& value) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path PathFor(const std::string& key) const;

  std::filesystem::path dir_;
};

class CachedQuestionGenerator : public QGBackend {
 public:
  CachedQuestionGenerator(std::shared_ptr<QGBackend> inner,
                          std::shared_ptr<const ResultCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}

  std::string name() const override { return inner_->name(); }
  std::string Generate(const QGRequest& request,
                       const std::string& request_id) override;

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::shared_ptr<QGBackend> inner_;
  std::shared_ptr<const ResultCache> cache_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

class CachedAnswerer : public QABackend {
 public:
  CachedAnswerer(std::shared_ptr<QABackend> inner,
                 std::shared_ptr<const ResultCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}

  std::string name() const override { return inner_->name(); }
  Prediction Answer(const QARequest& request,
                    const std::string& request_id) override;

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  std::shared_ptr<QABackend> inner_;
  std::shared_ptr<const ResultCache> cache_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

}  // namespace qaeval

#endif  // QAEVAL_CACHE_H_
