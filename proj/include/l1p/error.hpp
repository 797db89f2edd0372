#pragma once

#include <stdexcept>
#include <string>

namespace l1p {

enum class ErrorCode {
  invalid_dimension,
  dimension_mismatch,
  degenerate_body,
  empty_side,
  invalid_argument,
  sampling_failure,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_dimension: return "invalid-dimension";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::degenerate_body: return "degenerate-body";
    case ErrorCode::empty_side: return "empty-side";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::sampling_failure: return "sampling-failure";
  }
  return "unknown";
}

// Bad input: user-facing, maps to CLI exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A computed result broke a guaranteed inequality; maps to CLI exit code 1.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace l1p
