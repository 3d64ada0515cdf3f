// Copyright 2026 The nttkit Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nttkit {

enum class ErrorCode {
  kNotInvertible,
  kNoSuchRoot,
  kInvalidRoot,
  kOrderMismatch,
  kSpecViolation,
  kSpecMismatch,
  kRingMismatch,
  kModulusMismatch,
  kFormMismatch,
  kLengthMismatch,
  kParameterCondition,
  kBadAlpha,
  kBoundTooSmall,
  kNotCoprime,
  kPadTooSmall,
  kBadShape,
  kShapeCondition,
  kChainMismatch,
  kPlanMismatch,
  kUnknownPreset,
  kNoStrategy,
  kShapeMismatch,
  kParseError,
  kIncompatibleRings,
};

std::string_view error_code_name(ErrorCode code);

class NttError : public std::runtime_error {
 public:
  NttError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw NttError(code, message);
}

// Checks a precondition; the message expression is only evaluated on failure.
#define NTTKIT_REQUIRE(cond, code, message)   \
  do {                                        \
    if (!(cond)) ::nttkit::fail(code, message); \
  } while (false)

}  // namespace nttkit
