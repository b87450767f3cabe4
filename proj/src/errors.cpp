// Copyright 2026 The Morphforge Authors
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

#include "morphforge/errors.hpp"

namespace morphforge {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonSymmetric:        return "NonSymmetric";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kZeroMass:            return "ZeroMass";
    case ErrorCode::kNotUpperTriangular:  return "NotUpperTriangular";
    case ErrorCode::kNonPositiveDiagonal: return "NonPositiveDiagonal";
    case ErrorCode::kMalformedDocument:   return "MalformedDocument";
    case ErrorCode::kDanglingReference:   return "DanglingReference";
    case ErrorCode::kCyclicTree:          return "CyclicTree";
    case ErrorCode::kMissingInertia:      return "MissingInertia";
    case ErrorCode::kInconsistentLink:    return "InconsistentLink";
    case ErrorCode::kInconsistentTemplate: return "InconsistentTemplate";
    case ErrorCode::kUnknownGroup:        return "UnknownGroup";
    case ErrorCode::kZeroReferenceMass:   return "ZeroReferenceMass";
    case ErrorCode::kUnmappedJoint:       return "UnmappedJoint";
    case ErrorCode::kDuplicateSlot:       return "DuplicateSlot";
    case ErrorCode::kDisconnectedGraph:   return "DisconnectedGraph";
    case ErrorCode::kCycleDetected:       return "CycleDetected";
    case ErrorCode::kLengthMismatch:      return "LengthMismatch";
    case ErrorCode::kShapeMismatch:       return "ShapeMismatch";
    case ErrorCode::kWrongHistoryLength:  return "WrongHistoryLength";
    case ErrorCode::kInvalidStanceRatio:  return "InvalidStanceRatio";
    case ErrorCode::kInvalidConfig:       return "InvalidConfig";
    case ErrorCode::kIoError:             return "IoError";
  }
  return "UnknownError";
}

}  // namespace morphforge
