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

#pragma once

#include <stdexcept>
#include <string>

namespace mixcert {

enum class ErrorCode {
  kInvalidArgument = 1,
  kNonStochastic,
  kTooSmall,
  kNotErgodic,
  kNotReversible,
  kDomainError,
  kBadInit,
  kBadParams,
  kPathTooShort,
  kEmptyResult,
  kSingular,
  kAxiomViolation,
  kNotSymmetric,
  kNoConvergence,
  kDiverged,
  kIo,
  kParse,
};

const char* ErrorCodeName(ErrorCode code);

// All failures in the core are reported by throwing Error; the C layer maps
// the code onto mixcert_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mixcert
