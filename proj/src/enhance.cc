// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/enhance.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "modwd/error.h"
#include "modwd/gain.h"
#include "modwd/modwd.h"

namespace modwd {

NoisePsd EstimateNoiseInitial(const MagPhase &spec, std::size_t n_frames) {
  if (n_frames == 0 || spec.num_frames() < n_frames)
    throw Error(ErrorCode::kTooFewFrames,
                "noise estimate wants " + std::to_string(n_frames) +
                    " frames, spectrogram has " +
                    std::to_string(spec.num_frames()));
  NoisePsd out;
  out.n_frames_used = n_frames;
  out.psd.assign(spec.num_bins(), 0.0);
  for (std::size_t m = 0; m < n_frames; ++m) {
    auto mag = spec.magnitude.row(m);
    for (std::size_t k = 0; k < mag.size(); ++k) out.psd[k] += mag[k] * mag[k];
  }
  for (double &p : out.psd)
    p = std::max(p / static_cast<double>(n_frames), kNoisePsdFloor);
  return out;
}

void SpectralSubtractionParams::Validate() const {
  if (num_bands < 1 || !(snr_low_db < snr_high_db) || beta_min <= 0.0 ||
      beta_max < beta_min || !(spectral_floor >= 0.0 && spectral_floor < 1.0) ||
      delta_low <= 0.0 || delta_mid <= 0.0 || delta_high <= 0.0)
    throw Error(ErrorCode::kInvalidArgument,
                "spectral subtraction parameters out of range");
}

void DecisionDirectedParams::Validate() const {
  if (!(a_dd >= 0.9 && a_dd <= 0.999))
    throw Error(ErrorCode::kInvalidArgument,
                "a_dd must lie in [0.9, 0.999], got " + std::to_string(a_dd));
  if (!(gain_floor > 0.0 && gain_floor <= 0.5))
    throw Error(ErrorCode::kInvalidArgument,
                "gain floor must lie in (0, 0.5], got " +
                    std::to_string(gain_floor));
}

double OverSubtractionFactor(double band_snr_db,
                             const SpectralSubtractionParams &params) {
  if (!(band_snr_db > params.snr_low_db)) return params.beta_max;  // also NaN
  if (band_snr_db >= params.snr_high_db) return params.beta_min;
  const double t = (band_snr_db - params.snr_low_db) /
                   (params.snr_high_db - params.snr_low_db);
  return params.beta_max + t * (params.beta_min - params.beta_max);
}

namespace {

void CheckNoiseDims(const MagPhase &spec, const NoisePsd &noise) {
  if (noise.psd.size() != spec.num_bins() ||
      spec.phase.rows() != spec.num_frames() ||
      spec.phase.cols() != spec.num_bins())
    throw Error(ErrorCode::kDimensionMismatch,
                "noise PSD has " + std::to_string(noise.psd.size()) +
                    " bins, spectrogram " + std::to_string(spec.num_bins()));
}

using GainLaw = std::function<double(double xi, double gamma)>;

MagPhase ApplyDecisionDirected(const MagPhase &spec, const NoisePsd &noise,
                               const DecisionDirectedParams &params,
                               const GainLaw &law) {
  CheckNoiseDims(spec, noise);
  params.Validate();
  MagPhase out = spec;
  const std::size_t bins = spec.num_bins();
  for (std::size_t m = 0; m < spec.num_frames(); ++m) {
    auto in = spec.magnitude.row(m);
    auto dst = out.magnitude.row(m);
    for (std::size_t k = 0; k < bins; ++k) {
      const double psd = noise.psd[k];
      const double gamma = in[k] * in[k] / psd;
      const double ml = std::max(gamma - 1.0, 0.0);
      double xi = ml;
      if (m > 0) {
        const double prev = out.magnitude(m - 1, k);
        xi = params.a_dd * prev * prev / psd + (1.0 - params.a_dd) * ml;
      }
      dst[k] = ClampGain(law(xi, gamma), params.gain_floor) * in[k];
    }
  }
  return out;
}

}  // namespace

MagPhase SpectralSubtractMultiband(const MagPhase &spec, const NoisePsd &noise,
                                   const SpectralSubtractionParams &params) {
  CheckNoiseDims(spec, noise);
  params.Validate();
  const std::size_t bins = spec.num_bins();
  const auto bands = static_cast<std::size_t>(params.num_bands);
  std::vector<std::size_t> band_of(bins);
  for (std::size_t k = 0; k < bins; ++k) band_of[k] = k * bands / bins;

  std::vector<double> delta(bands, params.delta_mid);
  delta.front() = params.delta_low;
  if (bands > 1) delta.back() = params.delta_high;

  std::vector<double> noise_power(bands, 0.0);
  for (std::size_t k = 0; k < bins; ++k) noise_power[band_of[k]] += noise.psd[k];

  MagPhase out = spec;
  std::vector<double> signal_power(bands);
  for (std::size_t m = 0; m < spec.num_frames(); ++m) {
    auto in = spec.magnitude.row(m);
    auto dst = out.magnitude.row(m);
    std::fill(signal_power.begin(), signal_power.end(), 0.0);
    for (std::size_t k = 0; k < bins; ++k)
      signal_power[band_of[k]] += in[k] * in[k];

    std::vector<double> factor(bands);
    for (std::size_t b = 0; b < bands; ++b) {
      const double snr_db =
          10.0 * std::log10(signal_power[b] / noise_power[b]);
      factor[b] = delta[b] * OverSubtractionFactor(snr_db, params);
    }
    for (std::size_t k = 0; k < bins; ++k) {
      const double power = in[k] * in[k];
      const double reduced = power - factor[band_of[k]] * noise.psd[k];
      dst[k] = std::sqrt(std::max(reduced, params.spectral_floor * power));
    }
  }
  return out;
}

MagPhase WienerFilter(const MagPhase &spec, const NoisePsd &noise,
                      const DecisionDirectedParams &params) {
  return ApplyDecisionDirected(
      spec, noise, params, [](double xi, double) { return WienerGain(xi); });
}

MagPhase StsaMmse(const MagPhase &spec, const NoisePsd &noise,
                  const DecisionDirectedParams &params) {
  return ApplyDecisionDirected(spec, noise, params, StsaGainRaw);
}

MagPhase LogStsa(const MagPhase &spec, const NoisePsd &noise,
                 const DecisionDirectedParams &params) {
  return ApplyDecisionDirected(spec, noise, params, LogStsaGainRaw);
}

const char *EnhancerName(EnhancerKind kind) {
  switch (kind) {
    case EnhancerKind::kNone: return "noisy";
    case EnhancerKind::kSS: return "ss";
    case EnhancerKind::kWF: return "wf";
    case EnhancerKind::kSTSA: return "stsa";
    case EnhancerKind::kLogSTSA: return "logstsa";
    case EnhancerKind::kModwd: return "modwd";
  }
  return "?";
}

PcmSignal RunEnhancer(const EnhancerSpec &spec, const PcmSignal &input) {
  switch (spec.kind) {
    case EnhancerKind::kNone:
      return input;
    case EnhancerKind::kModwd: {
      ModwdConfig cfg;
      cfg.alpha = spec.alpha;
      cfg.frame_params = spec.frame_params;
      cfg.extension = spec.extension;
      return ModwdEnhance(input, cfg);
    }
    default:
      break;
  }

  MagPhase stft = ToMagPhase(Stft(input, spec.frame_params));
  NoisePsd noise = EstimateNoiseInitial(stft, spec.noise_frames);
  switch (spec.kind) {
    case EnhancerKind::kSS:
      return Istft(SpectralSubtractMultiband(stft, noise, spec.ss));
    case EnhancerKind::kWF:
      return Istft(WienerFilter(stft, noise, spec.dd));
    case EnhancerKind::kSTSA:
      return Istft(StsaMmse(stft, noise, spec.dd));
    case EnhancerKind::kLogSTSA:
      return Istft(LogStsa(stft, noise, spec.dd));
    default:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown enhancer kind");
}

PcmSignal Cascade(const CascadeSpec &cascade, const PcmSignal &noisy) {
  if (cascade.stages.empty())
    throw Error(ErrorCode::kInvalidArgument, "cascade has no stages");
  PcmSignal signal = noisy;
  for (const EnhancerSpec &stage : cascade.stages)
    signal = RunEnhancer(stage, signal);
  return signal;
}

}  // namespace modwd
