/*
 * Copyright 2026 The amore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AMORE_ERROR_H_
#define AMORE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace amore {

// Every failure raised by the library carries one of these kinds. The CLI maps
// kinds to process exit codes.
enum class ErrorKind {
  kIo,
  kParse,
  kSchema,
  kDomain,
  kShape,
  kDegenerateLabels,
  kDegenerateFeature,
  kEmptyMatrix,
  kNoFeature,
  kEmptyResult,
  kNoTarget,
  kZeroSupport,
  kInfeasibleConfig,
  kConfig,
  kSpec,
  kTooLarge,
  kRange,
};

// Stable identifier used in machine-readable error output, e.g. "ParseError".
std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised for a malformed cell. Row numbers are 1-based data rows (the header
// is row 0).
class ParseError : public Error {
 public:
  ParseError(size_t row, std::string column, const std::string& message)
      : Error(ErrorKind::kParse, message), row_(row), column_(std::move(column)) {}

  size_t row() const { return row_; }
  const std::string& column() const { return column_; }

 private:
  size_t row_;
  std::string column_;
};

}  // namespace amore

#endif  // AMORE_ERROR_H_
