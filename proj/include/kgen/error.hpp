// Copyright 2026 The kgen Authors. All Rights Reserved.
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

namespace kgen {

enum class ErrorCode {
  kLengthOverflow,   // padding or encoding target shorter than the value
  kValueOverflow,    // integer does not fit the requested width
  kInvalidLength,    // program text length not a multiple of 3
  kCapExceeded,      // enumeration or table cap above the hard limit / too small
  kArity,            // generator input of the wrong length
  kNonTotal,         // generator faulted on an input
  kParameter,        // bad family parameters
  kPrecondition,     // any other violated precondition
  kNotIdeal,         // operation requires an ideal generator
  kDomainFault,      // idealized generator decoded outside the raw domain
  kEstimator,        // compressor failure
  kParse,            // malformed 0/1 text
};

const char* to_string(ErrorCode code);

// All library failures. The CLI maps every Error to the "refusal" exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kgen
