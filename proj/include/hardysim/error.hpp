// Copyright 2026 The hardysim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace hardysim {

/// Base of every domain error. `code()` is a stable kebab-case identifier
/// that the CLI prints in diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define HARDYSIM_DEFINE_ERROR(Name, Code)                               \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& message) : Error(Code, message) {} \
  };

HARDYSIM_DEFINE_ERROR(NotRational, "not-rational")
HARDYSIM_DEFINE_ERROR(UnsupportedRadical, "unsupported-radical")
HARDYSIM_DEFINE_ERROR(ArmMismatch, "arm-mismatch")
HARDYSIM_DEFINE_ERROR(InvalidLabel, "invalid-label")
HARDYSIM_DEFINE_ERROR(InvalidElement, "invalid-element")
HARDYSIM_DEFINE_ERROR(ZeroState, "zero-state")
HARDYSIM_DEFINE_ERROR(ZeroConditioningEvent, "zero-conditioning-event")
HARDYSIM_DEFINE_ERROR(DegreesOfFreedomOutOfRange, "dof-out-of-range")
HARDYSIM_DEFINE_ERROR(InvalidTable, "invalid-table")

#undef HARDYSIM_DEFINE_ERROR

}  // namespace hardysim
