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

#include "amore/error.h"

namespace amore {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kSchema: return "SchemaError";
    case ErrorKind::kDomain: return "DomainError";
    case ErrorKind::kShape: return "ShapeError";
    case ErrorKind::kDegenerateLabels: return "DegenerateLabelsError";
    case ErrorKind::kDegenerateFeature: return "DegenerateFeatureError";
    case ErrorKind::kEmptyMatrix: return "EmptyMatrixError";
    case ErrorKind::kNoFeature: return "NoFeatureError";
    case ErrorKind::kEmptyResult: return "EmptyResultError";
    case ErrorKind::kNoTarget: return "NoTargetError";
    case ErrorKind::kZeroSupport: return "ZeroSupportError";
    case ErrorKind::kInfeasibleConfig: return "InfeasibleConfigError";
    case ErrorKind::kConfig: return "ConfigError";
    case ErrorKind::kSpec: return "SpecError";
    case ErrorKind::kTooLarge: return "TooLargeError";
    case ErrorKind::kRange: return "RangeError";
  }
  return "Error";
}

}  // namespace amore
