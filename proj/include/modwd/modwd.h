// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_MODWD_H_
#define MODWD_MODWD_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "modwd/dwt.h"
#include "modwd/plane.h"
#include "modwd/signal_io.h"
#include "modwd/stft.h"

namespace modwd {

// Modulation-domain wavelet denoising.
//
// Every frequency bin of the magnitude spectrogram is treated as a time
// series sampled at the frame rate. A one-level DWT splits it into a
// half-band lowpass (approximation) and highpass (detail) part; the detail is
// multiplied by alpha and the series is rebuilt. With 10 ms frames the split
// sits at 25 Hz modulation frequency, so alpha < 1 attenuates fast
// frame-to-frame fluctuations while the slow envelope that carries most
// speech content passes unchanged. The noisy phase is reused for synthesis.

struct ModwdConfig {
  double alpha = 0.25;
  FrameParams frame_params;
  const BiorFilterBank *bank = &Bior37();
  Extension extension = Extension::kSymmetric;

  // Throws InvalidArgument unless 0 <= alpha <= 1.
  void Validate() const;
};

// Detail-scaling factors evaluated by default, plus the alpha = 1 baseline.
inline constexpr double kDefaultAlphaSweep[] = {0.0, 0.25, 0.5, 0.75, 1.0};

// One WaveletPair per frequency bin, all describing num_frames samples.
struct WaveletSpectrogram {
  std::vector<WaveletPair> rows;
  FrameParams params;

  std::size_t num_bins() const { return rows.size(); }
  std::size_t num_frames() const {
    return rows.empty() ? 0 : rows.front().original_len;
  }
  std::size_t coeff_len() const {
    return rows.empty() ? 0 : rows.front().approx.size();
  }

  bool operator==(const WaveletSpectrogram &) const = default;
};

// Row k of the result is Dwt1 of the trajectory magnitude(., k).
WaveletSpectrogram DecomposeRows(const Plane &magnitude,
                                 const BiorFilterBank &bank,
                                 const FrameParams &params = {},
                                 Extension extension = Extension::kSymmetric);

// detail <- alpha * detail; approximations are copied untouched. alpha = 0
// yields +0.0 details.
WaveletSpectrogram ScaleDetail(const WaveletSpectrogram &ws, double alpha);

enum class NegativeMagnitudes { kClamp, kKeep };

// Inverse of DecomposeRows. Reconstructed values below zero are set to zero
// unless kKeep is requested.
Plane ReconstructRows(const WaveletSpectrogram &ws, const BiorFilterBank &bank,
                      NegativeMagnitudes negatives = NegativeMagnitudes::kClamp);

// decompose -> scale -> reconstruct on a magnitude plane.
Plane ModwdMagnitude(const Plane &magnitude, double alpha,
                     const BiorFilterBank &bank,
                     NegativeMagnitudes negatives = NegativeMagnitudes::kClamp,
                     Extension extension = Extension::kSymmetric);

// Replaces the magnitude of `spec` by its ModWD-processed version.
MagPhase ApplyModwd(const MagPhase &spec, const ModwdConfig &cfg);

// Full waveform pipeline. alpha = 1 leaves the magnitude untouched and is
// exactly the plain STFT/ISTFT round trip.
PcmSignal ModwdEnhance(const PcmSignal &noisy, const ModwdConfig &cfg);

// --- Approximation-only payload -------------------------------------------
//
// Layout, all little-endian:
//   offset  0  uint32  num_bins      (K)
//   offset  4  uint32  coeff_len
//   offset  8  uint32  original_len  (frames L)
//   offset 12  uint32  fft_size
//   offset 16  float64 approx[k][o], k-major, K * coeff_len values
//
// Coefficients are stored in double precision so that rebuilding from a
// payload is bit-identical to in-process alpha = 0 processing.

inline constexpr std::size_t kPayloadHeaderBytes = 16;

struct PayloadHeader {
  std::uint32_t num_bins = 0;
  std::uint32_t coeff_len = 0;
  std::uint32_t original_len = 0;
  std::uint32_t fft_size = 0;

  bool operator==(const PayloadHeader &) const = default;
};

std::vector<unsigned char> SerializeApproximationPayload(
    const WaveletSpectrogram &ws);

// Rebuilds a WaveletSpectrogram whose details are all zero. frame_len and
// hop are not part of the payload; they are taken from `params`, whose
// fft_size must match the header. Throws VersionError on a header that is
// inconsistent with the filter length or the byte count.
WaveletSpectrogram DeserializeApproximationPayload(
    std::span<const unsigned char> bytes, const BiorFilterBank &bank,
    const FrameParams &params = {});

PayloadHeader ReadPayloadHeader(std::span<const unsigned char> bytes);

// Number of stored coefficients, K * coeff_len.
std::size_t PayloadFloatCount(const WaveletSpectrogram &ws);

// --- Stage export ----------------------------------------------------------

// The four magnitude-domain views of one utterance: input magnitude,
// approximation and detail coefficient planes (coeff_len x K), and the
// reconstruction with the configured alpha.
struct SpectrogramStages {
  Plane original;
  Plane approximation;
  Plane detail;
  Plane reconstructed;
};

SpectrogramStages ExportSpectrogramStages(const PcmSignal &noisy,
                                          const ModwdConfig &cfg);

}  // namespace modwd

#endif  // MODWD_MODWD_H_
