// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/modwd.h"

#include <bit>
#include <string>

#include "modwd/error.h"

namespace modwd {

void ModwdConfig::Validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::kInvalidArgument,
                "alpha must lie in [0, 1], got " + std::to_string(alpha));
  if (bank == nullptr)
    throw Error(ErrorCode::kInvalidArgument, "no filter bank configured");
  frame_params.Validate();
}

WaveletSpectrogram DecomposeRows(const Plane &magnitude,
                                 const BiorFilterBank &bank,
                                 const FrameParams &params,
                                 Extension extension) {
  WaveletSpectrogram ws;
  ws.params = params;
  ws.rows.reserve(magnitude.cols());
  for (std::size_t k = 0; k < magnitude.cols(); ++k)
    ws.rows.push_back(Dwt1(magnitude.column(k), bank, extension));
  return ws;
}

WaveletSpectrogram ScaleDetail(const WaveletSpectrogram &ws, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::kInvalidArgument,
                "alpha must lie in [0, 1], got " + std::to_string(alpha));
  WaveletSpectrogram out = ws;
  for (WaveletPair &row : out.rows)
    for (double &d : row.detail) d = alpha == 0.0 ? 0.0 : alpha * d;
  return out;
}

Plane ReconstructRows(const WaveletSpectrogram &ws, const BiorFilterBank &bank,
                      NegativeMagnitudes negatives) {
  const std::size_t frames = ws.num_frames();
  for (const WaveletPair &row : ws.rows)
    if (row.original_len != frames || row.approx.size() != ws.coeff_len())
      throw Error(ErrorCode::kInconsistentPair,
                  "wavelet rows disagree on their dimensions");

  Plane out(frames, ws.num_bins());
  for (std::size_t k = 0; k < ws.num_bins(); ++k) {
    std::vector<double> trajectory = Idwt1(ws.rows[k], bank);
    if (negatives == NegativeMagnitudes::kClamp)
      for (double &v : trajectory)
        if (v < 0.0) v = 0.0;
    out.set_column(k, std::span<const double>(trajectory));
  }
  return out;
}

Plane ModwdMagnitude(const Plane &magnitude, double alpha,
                     const BiorFilterBank &bank, NegativeMagnitudes negatives,
                     Extension extension) {
  return ReconstructRows(
      ScaleDetail(DecomposeRows(magnitude, bank, {}, extension), alpha), bank,
      negatives);
}

MagPhase ApplyModwd(const MagPhase &spec, const ModwdConfig &cfg) {
  cfg.Validate();
  if (cfg.alpha == 1.0) return spec;
  MagPhase out = spec;
  out.magnitude = ModwdMagnitude(spec.magnitude, cfg.alpha, *cfg.bank,
                                 NegativeMagnitudes::kClamp, cfg.extension);
  return out;
}

PcmSignal ModwdEnhance(const PcmSignal &noisy, const ModwdConfig &cfg) {
  cfg.Validate();
  MagPhase spec = ToMagPhase(Stft(noisy, cfg.frame_params));
  if (spec.num_frames() < 2)
    throw Error(ErrorCode::kSignalTooShort,
                "ModWD needs at least 2 frames, got " +
                    std::to_string(spec.num_frames()));
  return Istft(ApplyModwd(spec, cfg));
}

// --- payload ---------------------------------------------------------------

namespace {

void Put32(std::vector<unsigned char> *out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out->push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t Get32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void Put64(std::vector<unsigned char> *out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i)
    out->push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t Get64(const unsigned char *p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace

std::size_t PayloadFloatCount(const WaveletSpectrogram &ws) {
  return ws.num_bins() * ws.coeff_len();
}

std::vector<unsigned char> SerializeApproximationPayload(
    const WaveletSpectrogram &ws) {
  std::vector<unsigned char> out;
  out.reserve(kPayloadHeaderBytes + 8 * PayloadFloatCount(ws));
  Put32(&out, static_cast<std::uint32_t>(ws.num_bins()));
  Put32(&out, static_cast<std::uint32_t>(ws.coeff_len()));
  Put32(&out, static_cast<std::uint32_t>(ws.num_frames()));
  Put32(&out, static_cast<std::uint32_t>(ws.params.fft_size));
  for (const WaveletPair &row : ws.rows)
    for (double a : row.approx) Put64(&out, std::bit_cast<std::uint64_t>(a));
  return out;
}

PayloadHeader ReadPayloadHeader(std::span<const unsigned char> bytes) {
  if (bytes.size() < kPayloadHeaderBytes)
    throw Error(ErrorCode::kVersionError,
                "payload shorter than its 16-byte header");
  PayloadHeader h;
  h.num_bins = Get32(bytes.data());
  h.coeff_len = Get32(bytes.data() + 4);
  h.original_len = Get32(bytes.data() + 8);
  h.fft_size = Get32(bytes.data() + 12);
  return h;
}

WaveletSpectrogram DeserializeApproximationPayload(
    std::span<const unsigned char> bytes, const BiorFilterBank &bank,
    const FrameParams &params) {
  const PayloadHeader h = ReadPayloadHeader(bytes);
  if (h.fft_size < 2 || h.num_bins != h.fft_size / 2 + 1)
    throw Error(ErrorCode::kVersionError,
                "bin count " + std::to_string(h.num_bins) +
                    " does not match fft size " + std::to_string(h.fft_size));
  if (h.original_len < 2 ||
      CoefficientLength(h.original_len, bank.filter_len()) != h.coeff_len)
    throw Error(ErrorCode::kVersionError,
                "coefficient length " + std::to_string(h.coeff_len) +
                    " does not match " + std::to_string(h.original_len) +
                    " frames for " + bank.name);
  if (static_cast<int>(h.fft_size) != params.fft_size)
    throw Error(ErrorCode::kVersionError,
                "payload fft size " + std::to_string(h.fft_size) +
                    " differs from configured " +
                    std::to_string(params.fft_size));
  const std::size_t count =
      static_cast<std::size_t>(h.num_bins) * h.coeff_len;
  if (bytes.size() != kPayloadHeaderBytes + 8 * count)
    throw Error(ErrorCode::kVersionError,
                "payload holds " + std::to_string(bytes.size()) +
                    " bytes, header implies " +
                    std::to_string(kPayloadHeaderBytes + 8 * count));

  WaveletSpectrogram ws;
  ws.params = params;
  ws.rows.resize(h.num_bins);
  const unsigned char *p = bytes.data() + kPayloadHeaderBytes;
  for (WaveletPair &row : ws.rows) {
    row.original_len = h.original_len;
    row.approx.resize(h.coeff_len);
    row.detail.assign(h.coeff_len, 0.0);
    for (double &a : row.approx) {
      a = std::bit_cast<double>(Get64(p));
      p += 8;
    }
  }
  return ws;
}

// --- stages ----------------------------------------------------------------

SpectrogramStages ExportSpectrogramStages(const PcmSignal &noisy,
                                          const ModwdConfig &cfg) {
  cfg.Validate();
  MagPhase spec = ToMagPhase(Stft(noisy, cfg.frame_params));
  WaveletSpectrogram ws =
      DecomposeRows(spec.magnitude, *cfg.bank, cfg.frame_params, cfg.extension);

  SpectrogramStages stages;
  stages.approximation = Plane(ws.coeff_len(), ws.num_bins());
  stages.detail = Plane(ws.coeff_len(), ws.num_bins());
  for (std::size_t k = 0; k < ws.num_bins(); ++k) {
    stages.approximation.set_column(
        k, std::span<const double>(ws.rows[k].approx));
    stages.detail.set_column(k, std::span<const double>(ws.rows[k].detail));
  }
  stages.reconstructed =
      ReconstructRows(ScaleDetail(ws, cfg.alpha), *cfg.bank);
  stages.original = std::move(spec.magnitude);
  return stages;
}

}  // namespace modwd
