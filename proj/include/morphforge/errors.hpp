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

#ifndef MORPHFORGE_ERRORS_HPP_
#define MORPHFORGE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace morphforge {

enum class ErrorCode {
  kNonSymmetric,
  kNotPositiveDefinite,
  kZeroMass,
  kNotUpperTriangular,
  kNonPositiveDiagonal,
  kMalformedDocument,
  kDanglingReference,
  kCyclicTree,
  kMissingInertia,
  kInconsistentLink,
  kInconsistentTemplate,
  kUnknownGroup,
  kZeroReferenceMass,
  kUnmappedJoint,
  kDuplicateSlot,
  kDisconnectedGraph,
  kCycleDetected,
  kLengthMismatch,
  kShapeMismatch,
  kWrongHistoryLength,
  kInvalidStanceRatio,
  kInvalidConfig,
  kIoError,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace morphforge

#endif  // MORPHFORGE_ERRORS_HPP_
