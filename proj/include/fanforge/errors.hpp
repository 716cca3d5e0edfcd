#pragma once

#include <stdexcept>
#include <string>

namespace fanforge {

enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kNotInCantor,
  kAtJumpLocation,
  kIndexOutOfRange,
  kTruncationTooCoarse,
  kStageOrderViolation,
  kJumpHit,
  kNotSpanning,
  kNotOrdered,
  kDepthInsufficient,
  kUnknownCopy,
  kSchema,
  kIo,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fanforge
