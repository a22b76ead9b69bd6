// Copyright 2026 The mixcert Authors.
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

#include "error.hpp"

namespace mixcert {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonStochastic: return "NonStochastic";
    case ErrorCode::kTooSmall: return "TooSmall";
    case ErrorCode::kNotErgodic: return "NotErgodic";
    case ErrorCode::kNotReversible: return "NotReversible";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kBadInit: return "BadInit";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kPathTooShort: return "PathTooShort";
    case ErrorCode::kEmptyResult: return "EmptyResult";
    case ErrorCode::kSingular: return "Singular";
    case ErrorCode::kAxiomViolation: return "AxiomViolation";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDiverged: return "Diverged";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

}  // namespace mixcert
