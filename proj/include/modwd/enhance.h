// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_ENHANCE_H_
#define MODWD_ENHANCE_H_

#include <cstddef>
#include <string>
#include <vector>

#include "modwd/dwt.h"
#include "modwd/signal_io.h"
#include "modwd/stft.h"

namespace modwd {

inline constexpr double kNoisePsdFloor = 1e-12;

// Noise power per one-sided bin.
struct NoisePsd {
  std::vector<double> psd;
  std::size_t n_frames_used = 0;
};

// Mean of |X|^2 over the first n_frames frames, floored at kNoisePsdFloor.
// Assumes the utterance starts with noise only.
NoisePsd EstimateNoiseInitial(const MagPhase &spec, std::size_t n_frames = 6);

// Multi-band spectral subtraction. Bins are split into num_bands contiguous
// equal-width bands. In band i of frame m the noisy power is reduced by
// delta_i * beta_i(m) * psd, where beta falls linearly from beta_max at
// snr_low_db (and below) to beta_min at snr_high_db (and above) as a
// function of the band SNR. The result never drops below
// spectral_floor * |X|^2.
struct SpectralSubtractionParams {
  int num_bands = 4;
  double beta_max = 4.74;
  double beta_min = 1.0;
  double snr_low_db = -5.0;
  double snr_high_db = 20.0;
  double delta_low = 1.0;   // lowest band
  double delta_mid = 2.5;   // interior bands
  double delta_high = 1.5;  // top band
  double spectral_floor = 0.002;

  void Validate() const;
};

// Over-subtraction factor for a band SNR in dB.
double OverSubtractionFactor(double band_snr_db,
                             const SpectralSubtractionParams &params);

// Shared by the Wiener, STSA and log-STSA enhancers. The a priori SNR
// follows the decision-directed rule
//   xi[m,k] = a_dd |Xhat[m-1,k]|^2 / psd[k] + (1 - a_dd) max(gamma - 1, 0)
// with xi[0,k] = max(gamma - 1, 0).
struct DecisionDirectedParams {
  double a_dd = 0.98;
  double gain_floor = 0.05;

  void Validate() const;  // a_dd in [0.9, 0.999], gain_floor in (0, 0.5]
};

MagPhase SpectralSubtractMultiband(const MagPhase &spec, const NoisePsd &noise,
                                   const SpectralSubtractionParams &params = {});
MagPhase WienerFilter(const MagPhase &spec, const NoisePsd &noise,
                      const DecisionDirectedParams &params = {});
MagPhase StsaMmse(const MagPhase &spec, const NoisePsd &noise,
                  const DecisionDirectedParams &params = {});
MagPhase LogStsa(const MagPhase &spec, const NoisePsd &noise,
                 const DecisionDirectedParams &params = {});

enum class EnhancerKind { kNone, kSS, kWF, kSTSA, kLogSTSA, kModwd };

const char *EnhancerName(EnhancerKind kind);

struct EnhancerSpec {
  EnhancerKind kind = EnhancerKind::kModwd;
  double alpha = 0.25;  // kModwd only
  SpectralSubtractionParams ss;
  DecisionDirectedParams dd;
  FrameParams frame_params;
  std::size_t noise_frames = 6;
  Extension extension = Extension::kSymmetric;
};

// Ordered list of stages; "A-B" runs A on the waveform, then B on A's output.
struct CascadeSpec {
  std::vector<EnhancerSpec> stages;
};

// One waveform-to-waveform stage. The statistical enhancers estimate noise
// on their own input. kNone returns the input unchanged.
PcmSignal RunEnhancer(const EnhancerSpec &spec, const PcmSignal &input);

// Throws InvalidArgument on an empty cascade.
PcmSignal Cascade(const CascadeSpec &cascade, const PcmSignal &noisy);

}  // namespace modwd

#endif  // MODWD_ENHANCE_H_
