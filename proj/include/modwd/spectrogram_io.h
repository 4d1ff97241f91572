// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_SPECTROGRAM_IO_H_
#define MODWD_SPECTROGRAM_IO_H_

#include <filesystem>
#include <span>
#include <vector>

#include "modwd/plane.h"
#include "modwd/stft.h"

namespace modwd {

// One line per row (frame), comma-separated, 17 significant digits.
void WritePlaneCsv(const std::filesystem::path &path, const Plane &plane);

// Raw little-endian float32 values, row-major, no header.
void WritePlaneFloat32(const std::filesystem::path &path, const Plane &plane);
Plane ReadPlaneFloat32(const std::filesystem::path &path, std::size_t rows,
                       std::size_t cols);

// Phase plane plus the framing needed to resynthesize it. Layout
// (little-endian): "MWPH", uint32 version = 1, uint32 frames, bins,
// frame_len, hop, fft_size, window (0 symmetric, 1 periodic Hamming),
// sample_rate_hz, then frames * bins float64 values, row-major.
struct PhaseRecord {
  Plane phase;
  FrameParams params;
  int sample_rate_hz = kDefaultSampleRateHz;
};

inline constexpr std::uint32_t kPhaseFormatVersion = 1;

std::vector<unsigned char> EncodePhaseRecord(const PhaseRecord &record);
PhaseRecord DecodePhaseRecord(std::span<const unsigned char> bytes);

std::vector<unsigned char> ReadFileBytes(const std::filesystem::path &path);
void WriteFileBytes(const std::filesystem::path &path,
                    std::span<const unsigned char> bytes);

}  // namespace modwd

#endif  // MODWD_SPECTROGRAM_IO_H_
