#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace openimage {

// Numeric values are part of the C ABI (see include/openimage/openimage.h).
enum class ErrorCode : int {
  Ok = 0,
  InvalidInput = 1,
  NonUnit = 2,
  BadValuation = 3,
  HypothesisFails = 4,
  PrecisionExhausted = 5,
  OddTrace = 6,
  SpanTooSmall = 7,
  DegenerateProjection = 8,
  Degenerate = 9,
  SizeCapExceeded = 10,
  SideConditionViolated = 11,
  NonSquareDet = 12,
  BranchAmbiguity = 13,
  PreconditionFailed = 14,
  IncomparableRepresentations = 15,
  CertificationFailed = 16,
  Internal = 99,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace openimage
