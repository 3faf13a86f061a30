// Copyright 2026 The notransfer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOTRANSFER_ERRORS_H_
#define NOTRANSFER_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace notransfer {

// Malformed input: wrong dimensions, bad probabilities, unknown fields.
// `field` names the offending JSON path when the error came from parsing.
class SchemaError : public std::invalid_argument {
 public:
  explicit SchemaError(const std::string& message, std::string field = "")
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Well-formed input on which an analysis refuses to run because the result
// it would rely on does not apply. `result` names that result.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(const std::string& message, std::string result)
      : std::runtime_error(message + " [requires: " + result + "]"),
        result_(std::move(result)) {}
  const std::string& result() const { return result_; }

 private:
  std::string result_;
};

// Unreadable or unwritable file, or text that is not JSON.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace notransfer

#endif  // NOTRANSFER_ERRORS_H_
