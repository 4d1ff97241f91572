// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_METRICS_H_
#define MODWD_METRICS_H_

#include <filesystem>
#include <map>
#include <string>

#include "modwd/signal_io.h"

namespace modwd {

inline constexpr double kSegSnrMinDb = -10.0;
inline constexpr double kSegSnrMaxDb = 35.0;
inline constexpr double kSegSnrSilenceEnergy = 1e-10;
inline constexpr double kLsdEpsilon = 1e-8;

// Mean over 20 ms non-overlapping frames of the per-frame SNR of `processed`
// against `clean`, each frame clamped to [-10, 35] dB. Frames whose clean
// energy is below 1e-10 are skipped. Signals are compared at zero lag after
// trimming to the shorter one; a length difference above one frame throws
// LengthMismatch.
double SegmentalSnr(const PcmSignal &clean, const PcmSignal &processed);

// RMS over all frames and bins of 20 log10((|Xc| + eps) / (|Xp| + eps)),
// using the default 20 ms / 10 ms / 256-point framing.
double LogSpectralDistance(const PcmSignal &clean, const PcmSignal &processed);

struct MetricValues {
  double seg_snr_db = 0.0;
  double lsd_db = 0.0;
};

MetricValues Evaluate(const PcmSignal &clean, const PcmSignal &processed);

struct QualityReport {
  std::string utterance_id;
  MetricValues overall;                  // mean over per_snr entries
  std::map<double, MetricValues> per_snr;  // keyed by mixing SNR in dB
};

// Mean of the per-SNR values into report->overall.
void Summarize(QualityReport *report);

inline constexpr const char *kDefaultScorePattern =
    R"([-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)";

// Runs an external scorer. `command_template` may reference {clean} and
// {processed}; both are replaced by shell-quoted paths. The first match of
// `pattern` (ECMAScript regex, default: a decimal number) in the command's
// stdout is parsed as the score; a custom pattern with a capture group
// yields that group instead. A nonzero exit throws ProcessFailure; no
// parseable match throws ParseFailure.
double ExternalScore(const std::string &command_template,
                     const std::filesystem::path &clean,
                     const std::filesystem::path &processed,
                     const std::string &pattern = kDefaultScorePattern);

}  // namespace modwd

#endif  // MODWD_METRICS_H_
