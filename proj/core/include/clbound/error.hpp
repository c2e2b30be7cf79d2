// Copyright The clbound Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace clbound {

enum class ErrorCode {
  kInvalidParameter,
  kDegenerateGeometry,
  kNotPositiveDefinite,
  kInsufficientData,
  kVacuousBound,
  kInternal,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace clbound
