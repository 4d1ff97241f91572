// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/error.h"

namespace modwd {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kEmptyAudio: return "EmptyAudio";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kAllSamplesClipped: return "AllSamplesClipped";
    case ErrorCode::kSilentInput: return "SilentInput";
    case ErrorCode::kSignalTooShort: return "SignalTooShort";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSequenceTooShort: return "SequenceTooShort";
    case ErrorCode::kInconsistentPair: return "InconsistentPair";
    case ErrorCode::kTooFewFrames: return "TooFewFrames";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kAllFramesSilent: return "AllFramesSilent";
    case ErrorCode::kProcessFailure: return "ProcessFailure";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kVersionError: return "VersionError";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace modwd
