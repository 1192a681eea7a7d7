// Copyright 2026 The gibbstree Authors
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

#ifndef GIBBSTREE_ERROR_HPP_
#define GIBBSTREE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gibbstree {

enum class ErrorCode {
  kBoundTooSmall,
  kBadEnergyTable,
  kKindMismatch,
  kSumMismatch,
  kSizeOverflow,
  kNoFeasibleTree,
  kLatticeTooLarge,
  kOffManifold,
  kBadLabel,
  kNotATree,
  kBadStepSum,
  kTooLarge,
  kDegreeBoundExceeded,
  kInvalidArgument,
};

constexpr std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBoundTooSmall: return "BoundTooSmall";
    case ErrorCode::kBadEnergyTable: return "BadEnergyTable";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kSumMismatch: return "SumMismatch";
    case ErrorCode::kSizeOverflow: return "SizeOverflow";
    case ErrorCode::kNoFeasibleTree: return "NoFeasibleTree";
    case ErrorCode::kLatticeTooLarge: return "LatticeTooLarge";
    case ErrorCode::kOffManifold: return "OffManifold";
    case ErrorCode::kBadLabel: return "BadLabel";
    case ErrorCode::kNotATree: return "NotATree";
    case ErrorCode::kBadStepSum: return "BadStepSum";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kDegreeBoundExceeded: return "DegreeBoundExceeded";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gibbstree

#endif  // GIBBSTREE_ERROR_HPP_
