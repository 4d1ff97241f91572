// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_ERROR_H_
#define MODWD_ERROR_H_

#include <stdexcept>
#include <string>

namespace modwd {

enum class ErrorCode {
  kMalformedHeader,
  kUnsupportedFormat,
  kEmptyAudio,
  kIoError,
  kAllSamplesClipped,
  kSilentInput,
  kSignalTooShort,
  kDimensionMismatch,
  kSequenceTooShort,
  kInconsistentPair,
  kTooFewFrames,
  kLengthMismatch,
  kAllFramesSilent,
  kProcessFailure,
  kParseFailure,
  kVersionError,
  kConfigError,
  kInvalidArgument,
};

const char *ErrorCodeName(ErrorCode code);

// All library failures are reported through this one exception type; the
// code tells callers which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace modwd

#endif  // MODWD_ERROR_H_
