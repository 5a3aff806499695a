/*
Copyright 2026 The adlasso Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace adlasso {

enum class ErrorCode {
  kInvalidArgument = 1,
  kInvalidDims,
  kNotSymmetric,
  kIndefiniteMatrix,
  kNoConvergence,
  kEigenFailure,
  kSingularGram,
  kSingularSubmatrix,
  kNonPsdCovariance,
  kLambdaZeroDual,
  kKktViolation,
  kMissingTruth,
  kMissingCleanData,
  kDegenerateDirection,
  kParseError,
  kMissingTarget,
  kEmptyDataset,
  kUnknownClaim,
  kInvalidDeltaRange,
  kIo,
  kInternal,
};

const char* error_tag(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_tag(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace adlasso
