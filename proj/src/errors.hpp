// Copyright 2026 The qconverse Authors
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

#ifndef QCONVERSE_ERRORS_HPP_
#define QCONVERSE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qconverse {

enum class ErrorCode {
  InvalidArgument,
  InvariantViolation,
  ParseError,
  SolverFailure,
  UnknownName,
};

/// Base exception for every failure raised by the library. The code is what
/// the C API translates into its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline Error invalid_argument(const std::string& what) {
  return Error(ErrorCode::InvalidArgument, what);
}

inline Error invariant_violation(const std::string& what) {
  return Error(ErrorCode::InvariantViolation, what);
}

}  // namespace qconverse

#endif  // QCONVERSE_ERRORS_HPP_
