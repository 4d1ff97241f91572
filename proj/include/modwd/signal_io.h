// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_SIGNAL_IO_H_
#define MODWD_SIGNAL_IO_H_

#include <cstddef>
#include <filesystem>
#include <limits>
#include <span>
#include <vector>

namespace modwd {

inline constexpr int kDefaultSampleRateHz = 8000;

// Mono time-domain signal, amplitudes nominally in [-1, 1].
struct PcmSignal {
  std::vector<double> samples;
  int sample_rate_hz = kDefaultSampleRateHz;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
};

enum class WavSampleFormat { kPcm16, kFloat32 };

struct WavWriteReport {
  std::size_t clipped_samples = 0;
};

// Reads a mono RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE float data.
// PCM values are scaled by 1/32768.
PcmSignal ReadWav(const std::filesystem::path &path);

// Writes a mono WAV file. For PCM16 output, samples outside [-1, 1] are
// hard-clipped and counted in the report; a signal in which every sample
// clips is rejected with AllSamplesClipped.
WavWriteReport WriteWav(const std::filesystem::path &path,
                        const PcmSignal &signal,
                        WavSampleFormat format = WavSampleFormat::kPcm16);

// In-memory variants used by the file functions; exposed for tests.
PcmSignal DecodeWav(std::span<const unsigned char> bytes);
std::vector<unsigned char> EncodeWav(const PcmSignal &signal,
                                     WavSampleFormat format,
                                     WavWriteReport *report = nullptr);

// Mean squared amplitude; 0 for an empty span.
double MeanPower(std::span<const double> samples);

// Gain applied to the noise so that the clean-to-scaled-noise power ratio
// is `snr_db`. Both powers are measured over the clean length, with the
// noise tiled if it is shorter.
double NoiseGainForSnr(const PcmSignal &clean, const PcmSignal &noise,
                       double snr_db);

// Returns clean + g * noise. Noise shorter than clean is tiled end to end;
// longer noise is truncated. snr_db = +infinity returns clean unchanged.
PcmSignal MixAtSnr(const PcmSignal &clean, const PcmSignal &noise,
                   double snr_db);

inline constexpr double kNoMixSnr = std::numeric_limits<double>::infinity();

}  // namespace modwd

#endif  // MODWD_SIGNAL_IO_H_
