#pragma once

#include <stdexcept>
#include <string>

namespace freeinterp {

enum class ErrorCode {
  InvalidArgument,
  DuplicatePoint,
  NonFinite,
  CapacityExceeded,
  Underflow,
  HypothesisViolated,
  GridTooCoarse,
  NotRadial,
  ModeMismatch,
  ArcsOverlap,
  DegenerateWeight,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace freeinterp
