// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_STFT_H_
#define MODWD_STFT_H_

#include <complex>
#include <cstddef>
#include <vector>

#include "modwd/plane.h"
#include "modwd/signal_io.h"

namespace modwd {

enum class WindowKind {
  kHamming,          // symmetric, denominator n - 1
  kHammingPeriodic,  // denominator n
};

// Framing configuration. Defaults: 20 ms frames with a 10 ms shift at 8 kHz,
// Hamming window, zero-padded to a 256-point DFT.
struct FrameParams {
  int frame_len = 160;
  int hop = 80;
  int fft_size = 256;
  WindowKind window = WindowKind::kHamming;

  // One-sided bin count, fft_size / 2 + 1.
  int num_bins() const { return fft_size / 2 + 1; }

  // Throws InvalidArgument unless 0 < hop <= frame_len <= fft_size.
  void Validate() const;

  bool operator==(const FrameParams &) const = default;
};

// w[i] = 0.54 - 0.46 cos(2 pi i / D), D = n - 1 (symmetric) or n (periodic).
std::vector<double> HammingWindow(int n, bool periodic = false);
std::vector<double> AnalysisWindow(const FrameParams &params);

// floor((num_samples - frame_len) / hop) + 1, or 0 if the signal is shorter
// than one frame.
std::size_t NumFrames(std::size_t num_samples, const FrameParams &params);

// (num_frames - 1) * hop + frame_len: samples past the last full frame are
// not resynthesized.
std::size_t SynthesisLength(std::size_t num_frames, const FrameParams &params);

struct ComplexSpectrogram {
  Grid<std::complex<double>> values;  // frames x bins
  FrameParams params;
  int sample_rate_hz = kDefaultSampleRateHz;

  std::size_t num_frames() const { return values.rows(); }
  std::size_t num_bins() const { return values.cols(); }
};

struct MagPhase {
  Plane magnitude;  // frames x bins, >= 0
  Plane phase;      // frames x bins, in (-pi, pi]
  FrameParams params;
  int sample_rate_hz = kDefaultSampleRateHz;

  std::size_t num_frames() const { return magnitude.rows(); }
  std::size_t num_bins() const { return magnitude.cols(); }
};

// Windowed, zero-padded one-sided DFT of every full frame.
ComplexSpectrogram Stft(const PcmSignal &signal, const FrameParams &params);

MagPhase ToMagPhase(const ComplexSpectrogram &spec);
ComplexSpectrogram ToComplex(const MagPhase &spec);

// Weighted overlap-add resynthesis with the analysis window applied again
// and each output sample divided by the summed squared window (floored at
// 1e-8). Istft(ToMagPhase(Stft(x))) reproduces x on every resynthesized
// sample up to rounding.
PcmSignal Istft(const MagPhase &spec);

inline constexpr double kWindowSumFloor = 1e-8;

}  // namespace modwd

#endif  // MODWD_STFT_H_
