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

// Exception types shared by every module. Callers that need to map failures
// onto process exit codes (the CLI) distinguish BackendError from the rest.

#ifndef QAEVAL_ERRORS_H_
#define QAEVAL_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qaeval {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. `location` is "line N" or a JSON field path.
class FormatError : public Error {
 public:
  FormatError(std::string location, const std::string& message)
      : Error(location + ": " + message), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

// Well-formed input that violates a data invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Linguistic annotation that is not a valid sentence (bad spans, non-tree).
class AnnotationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Caller violated an operation precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Correlation or scaling input with zero variance or too few points.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// A QG/QA backend failed (timeout, crash, protocol violation).
class BackendError : public Error {
 public:
  BackendError(std::string request_id, const std::string& message)
      : Error("request " + request_id + ": " + message),
        request_id_(std::move(request_id)) {}
  const std::string& request_id() const { return request_id_; }

 private:
  std::string request_id_;
};

// One or more items of a batch could not be computed after retries.
class BatchError : public BackendError {
 public:
  BatchError(std::vector<std::string> failed_ids, const std::string& first)
      : BackendError(failed_ids.empty() ? "" : failed_ids.front(),
                     std::to_string(failed_ids.size()) +
                         " item(s) failed; first failure: " + first),
        failed_ids_(std::move(failed_ids)) {}
  const std::vector<std::string>& failed_ids() const { return failed_ids_; }

 private:
  std::vector<std::string> failed_ids_;
};

}  // namespace qaeval

#endif  // QAEVAL_ERRORS_H_
