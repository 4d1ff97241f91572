// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_RUNNER_H_
#define MODWD_RUNNER_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "modwd/config.h"
#include "modwd/dwt.h"
#include "modwd/stft.h"

namespace modwd {

// "<utt>_<snr>dB.wav"
std::string NoisyFileName(const std::string &utterance_id, double snr_db);

struct RunFailure {
  std::string item;
  std::string message;
};

struct MixSummary {
  std::size_t files_written = 0;
  std::vector<RunFailure> failures;
};

// Writes every clean x SNR mixture to <output_dir>/noisy/.
MixSummary RunMix(const RunConfig &config);

// One line of the metrics CSV.
struct ReportRow {
  std::string utterance_id;
  std::string method;
  std::optional<double> alpha;  // empty for methods without ModWD
  double snr_db = 0.0;
  double seg_snr_db = 0.0;
  double lsd_db = 0.0;
  std::optional<double> external_score;
  std::string error;  // non-empty when the cell failed
};

struct EnhanceSummary {
  std::vector<ReportRow> rows;
  std::vector<RunFailure> failures;
};

// Runs every (method, alpha, snr, utterance) cell. Noisy inputs are mixed in
// memory exactly as RunMix does. Enhanced audio goes to
// <output_dir>/enhanced/<method dir>/<utt>_<snr>dB.wav and the CSV to
// ResolvedReportPath(). Rows are ordered by method, alpha, SNR, then
// utterance, independent of the number of jobs.
EnhanceSummary RunEnhance(const RunConfig &config);

// CSV columns: utterance_id,method,alpha,snr_db,seg_snr_db,lsd_db and,
// when `with_external` is set, external_score. Failed cells print "nan".
std::string FormatReportCsv(const std::vector<ReportRow> &rows,
                            bool with_external);

std::vector<ReportRow> ParseReportCsv(const std::string &text);

// Mean metrics per (method, alpha, snr) as an aligned text table.
std::string SummarizeReport(const std::vector<ReportRow> &rows);

// Client side: STFT, DWT per bin, keep approximations. Writes the payload
// to `payload` and the phase record to `payload` + ".phase".
struct CompressResult {
  std::size_t payload_bytes = 0;
  std::size_t payload_values = 0;
  std::size_t full_plane_values = 0;
};
CompressResult CompressWav(const std::filesystem::path &input,
                           const std::filesystem::path &payload,
                           const FrameParams &params = {},
                           const BiorFilterBank &bank = Bior37());

// Server side: rebuild the magnitude from the payload and resynthesize with
// the stored phase.
void DecompressToWav(const std::filesystem::path &payload,
                     const std::filesystem::path &output,
                     const BiorFilterBank &bank = Bior37(),
                     WavSampleFormat format = WavSampleFormat::kPcm16);

// In-memory form of DecompressToWav.
PcmSignal DecompressSignal(std::span<const unsigned char> payload,
                           std::span<const unsigned char> phase,
                           const BiorFilterBank &bank = Bior37());

std::filesystem::path PhasePathFor(const std::filesystem::path &payload);

}  // namespace modwd

#endif  // MODWD_RUNNER_H_
