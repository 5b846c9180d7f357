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

#include "qaeval/cache.h"

#include <openssl/evp.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "qaeval/errors.h"
#include "qaeval/protocol.h"

namespace qaeval {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(dir_);
}

std::string ResultCache::Key(std::string_view backend_name,
                             const json& request_body) {
  std::string material(backend_name);
  material.push_back('\n');
  material.append(protocol::kVersion);
  material.push_back('\n');
  material.append(request_body.dump());
  return Sha256Hex(material);
}

fs::path ResultCache::PathFor(const std::string& key) const {
  return dir_ / key.substr(0, 2) / (key + ".json");
}

std::optional<json> ResultCache::Get(const std::string& key) const {
  std::ifstream in(PathFor(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  json value = json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
  // Entries are complete once visible; an unparsable one is treated as a
  // miss and recomputed (but never overwritten).
  if (value.is_discarded()) return std::nullopt;
  return value;
}

bool ResultCache::Put(const std::string& key, const json& value) const {
  const fs::path target = PathFor(key);
  fs::create_directories(target.parent_path());
  std::ostringstream tmp_name;
  tmp_name << key << ".tmp." << ::getpid() << "."
           << std::hash<std::thread::id>{}(std::this_thread::get_id());
  const fs::path tmp = target.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache entry " + tmp.string());
    out << value.dump() << "\n";
    if (!out.flush()) throw Error("short write to " + tmp.string());
  }
  const int rc = ::link(tmp.c_str(), target.c_str());
  const int saved_errno = errno;
  std::error_code ignored;
  fs::remove(tmp, ignored);
  if (rc == 0) return true;
  if (saved_errno == EEXIST) return false;
  throw Error("cannot create cache entry " + target.string() + ": " +
              std::strerror(saved_errno));
}

std::string CachedQuestionGenerator::Generate(const QGRequest& request,
                                              const std::string& request_id) {
  const std::string key =
      ResultCache::Key(inner_->name(), protocol::GenerateBody(request));
  if (auto hit = cache_->Get(key);
      hit && hit->contains("question") && (*hit)["question"].is_string()) {
    ++hits_;
    return (*hit)["question"].get<std::string>();
  }
  ++misses_;
  std::string question = inner_->Generate(request, request_id);
  cache_->Put(key, json{{"question", question}});
  return question;
}

Prediction CachedAnswerer::Answer(const QARequest& request,
                                  const std::string& request_id) {
  const std::string key =
      ResultCache::Key(inner_->name(), protocol::AnswerBody(request));
  if (auto hit = cache_->Get(key)) {
    try {
      // Cached entries reuse the response parser with a synthetic id.
      json response = *hit;
      response["id"] = request_id;
      Prediction p = protocol::ParseAnswerResponse(response, request_id);
      ++hits_;
      return p;
    } catch (const BackendError&) {
      // Malformed entry: fall through and recompute.
    }
  }
  ++misses_;
  Prediction p = inner_->Answer(request, request_id);
  json stored = protocol::AnswerResponse(request_id, p);
  stored.erase("id");
  cache_->Put(key, stored);
  return p;
}

}  // namespace qaeval
