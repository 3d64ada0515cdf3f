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

#include "nttkit/errors.hpp"

namespace nttkit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kNoSuchRoot: return "NoSuchRoot";
    case ErrorCode::kInvalidRoot: return "InvalidRoot";
    case ErrorCode::kOrderMismatch: return "OrderMismatch";
    case ErrorCode::kSpecViolation: return "SpecViolation";
    case ErrorCode::kSpecMismatch: return "SpecMismatch";
    case ErrorCode::kRingMismatch: return "RingMismatch";
    case ErrorCode::kModulusMismatch: return "ModulusMismatch";
    case ErrorCode::kFormMismatch: return "FormMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kParameterCondition: return "ParameterCondition";
    case ErrorCode::kBadAlpha: return "BadAlpha";
    case ErrorCode::kBoundTooSmall: return "BoundTooSmall";
    case ErrorCode::kNotCoprime: return "NotCoprime";
    case ErrorCode::kPadTooSmall: return "PadTooSmall";
    case ErrorCode::kBadShape: return "BadShape";
    case ErrorCode::kShapeCondition: return "ShapeCondition";
    case ErrorCode::kChainMismatch: return "ChainMismatch";
    case ErrorCode::kPlanMismatch: return "PlanMismatch";
    case ErrorCode::kUnknownPreset: return "UnknownPreset";
    case ErrorCode::kNoStrategy: return "NoStrategy";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIncompatibleRings: return "IncompatibleRings";
  }
  return "Unknown";
}

}  // namespace nttkit
