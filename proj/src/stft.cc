// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/stft.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "modwd/error.h"
#include "real_fft.h"

namespace modwd {

void FrameParams::Validate() const {
  if (!(0 < hop && hop <= frame_len && frame_len <= fft_size))
    throw Error(ErrorCode::kInvalidArgument,
                "frame params require 0 < hop <= frame_len <= fft_size (got " +
                    std::to_string(hop) + ", " + std::to_string(frame_len) +
                    ", " + std::to_string(fft_size) + ")");
  if (frame_len < 2)
    throw Error(ErrorCode::kInvalidArgument, "frame_len must be >= 2");
}

std::vector<double> HammingWindow(int n, bool periodic) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "window length < 2");
  const double denom = periodic ? n : n - 1;
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / denom);
  return w;
}

std::vector<double> AnalysisWindow(const FrameParams &params) {
  return HammingWindow(params.frame_len,
                       params.window == WindowKind::kHammingPeriodic);
}

std::size_t NumFrames(std::size_t num_samples, const FrameParams &params) {
  const auto frame = static_cast<std::size_t>(params.frame_len);
  if (num_samples < frame) return 0;
  return (num_samples - frame) / static_cast<std::size_t>(params.hop) + 1;
}

std::size_t SynthesisLength(std::size_t num_frames,
                            const FrameParams &params) {
  if (num_frames == 0) return 0;
  return (num_frames - 1) * static_cast<std::size_t>(params.hop) +
         static_cast<std::size_t>(params.frame_len);
}

ComplexSpectrogram Stft(const PcmSignal &signal, const FrameParams &params) {
  params.Validate();
  const std::size_t frames = NumFrames(signal.size(), params);
  if (frames == 0)
    throw Error(ErrorCode::kSignalTooShort,
                std::to_string(signal.size()) + " samples, need at least " +
                    std::to_string(params.frame_len));

  const std::vector<double> window = AnalysisWindow(params);
  const auto frame_len = static_cast<std::size_t>(params.frame_len);
  ComplexSpectrogram out;
  out.params = params;
  out.sample_rate_hz = signal.sample_rate_hz;
  out.values = Grid<std::complex<double>>(frames, params.num_bins());

  internal::RealFft fft(params.fft_size);
  std::vector<double> frame(frame_len);
  for (std::size_t m = 0; m < frames; ++m) {
    const double *src = signal.samples.data() + m * params.hop;
    for (std::size_t i = 0; i < frame_len; ++i) frame[i] = src[i] * window[i];
    fft.Forward(frame, out.values.row(m));
  }
  return out;
}

MagPhase ToMagPhase(const ComplexSpectrogram &spec) {
  MagPhase out;
  out.params = spec.params;
  out.sample_rate_hz = spec.sample_rate_hz;
  out.magnitude = Plane(spec.num_frames(), spec.num_bins());
  out.phase = Plane(spec.num_frames(), spec.num_bins());
  const auto &src = spec.values.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    out.magnitude.data()[i] = std::abs(src[i]);
    out.phase.data()[i] = std::arg(src[i]);
  }
  return out;
}

ComplexSpectrogram ToComplex(const MagPhase &spec) {
  ComplexSpectrogram out;
  out.params = spec.params;
  out.sample_rate_hz = spec.sample_rate_hz;
  out.values = Grid<std::complex<double>>(spec.num_frames(), spec.num_bins());
  for (std::size_t i = 0; i < out.values.data().size(); ++i)
    out.values.data()[i] =
        std::polar(spec.magnitude.data()[i], spec.phase.data()[i]);
  return out;
}

PcmSignal Istft(const MagPhase &spec) {
  const FrameParams &params = spec.params;
  params.Validate();
  const std::size_t frames = spec.num_frames();
  if (spec.phase.rows() != frames || spec.phase.cols() != spec.num_bins() ||
      spec.num_bins() != static_cast<std::size_t>(params.num_bins()) ||
      frames == 0)
    throw Error(ErrorCode::kDimensionMismatch,
                "spectrogram is " + std::to_string(frames) + "x" +
                    std::to_string(spec.num_bins()) + " (phase " +
                    std::to_string(spec.phase.rows()) + "x" +
                    std::to_string(spec.phase.cols()) + "), expected " +
                    std::to_string(params.num_bins()) + " bins");

  const std::vector<double> window = AnalysisWindow(params);
  const auto frame_len = static_cast<std::size_t>(params.frame_len);
  const std::size_t length = SynthesisLength(frames, params);
  std::vector<double> acc(length, 0.0);
  std::vector<double> weight(length, 0.0);

  internal::RealFft fft(params.fft_size);
  std::vector<std::complex<double>> bins(spec.num_bins());
  std::vector<double> frame(frame_len);
  for (std::size_t m = 0; m < frames; ++m) {
    auto mag = spec.magnitude.row(m);
    auto phase = spec.phase.row(m);
    for (std::size_t k = 0; k < bins.size(); ++k)
      bins[k] = std::polar(mag[k], phase[k]);
    fft.Inverse(bins, frame);
    const std::size_t offset = m * params.hop;
    for (std::size_t i = 0; i < frame_len; ++i) {
      acc[offset + i] += frame[i] * window[i];
      weight[offset + i] += window[i] * window[i];
    }
  }

  PcmSignal out;
  out.sample_rate_hz = spec.sample_rate_hz;
  out.samples.resize(length);
  for (std::size_t n = 0; n < length; ++n)
    out.samples[n] = acc[n] / std::max(weight[n], kWindowSumFloor);
  return out;
}

}  // namespace modwd
