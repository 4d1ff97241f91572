// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/signal_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "modwd/error.h"

namespace modwd {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t Le16(const unsigned char *p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t Le32(const unsigned char *p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void Put16(std::vector<unsigned char> *out, std::uint16_t v) {
  out->push_back(static_cast<unsigned char>(v & 0xFF));
  out->push_back(static_cast<unsigned char>(v >> 8));
}

void Put32(std::vector<unsigned char> *out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i)
    out->push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

void PutTag(std::vector<unsigned char> *out, const char *tag) {
  out->insert(out->end(), tag, tag + 4);
}

bool TagIs(const unsigned char *p, const char *tag) {
  return std::memcmp(p, tag, 4) == 0;
}

}  // namespace

PcmSignal DecodeWav(std::span<const unsigned char> bytes) {
  if (bytes.size() < 12 || !TagIs(bytes.data(), "RIFF") ||
      !TagIs(bytes.data() + 8, "WAVE"))
    throw Error(ErrorCode::kMalformedHeader, "not a RIFF/WAVE container");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char *data = nullptr;
  std::size_t data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char *chunk = bytes.data() + pos;
    std::size_t size = Le32(chunk + 4);
    std::size_t body = pos + 8;
    std::size_t available = bytes.size() - body;
    if (TagIs(chunk, "fmt ")) {
      if (size < 16 || size > available)
        throw Error(ErrorCode::kMalformedHeader, "truncated fmt chunk");
      format = Le16(chunk + 8);
      channels = Le16(chunk + 10);
      rate = Le32(chunk + 12);
      bits = Le16(chunk + 22);
      if (format == kFormatExtensible) {
        if (size < 40)
          throw Error(ErrorCode::kMalformedHeader, "truncated extensible fmt");
        format = Le16(chunk + 32);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (TagIs(chunk, "data")) {
      // Streams written without a final size sometimes over-report; clamp.
      data = bytes.data() + body;
      data_size = std::min(size, available);
      have_data = true;
      break;
    }
    pos = body + size + (size & 1);
  }

  if (!have_fmt) throw Error(ErrorCode::kMalformedHeader, "missing fmt chunk");
  if (!have_data) throw Error(ErrorCode::kMalformedHeader, "missing data chunk");
  if (channels != 1)
    throw Error(ErrorCode::kUnsupportedFormat,
                "expected mono audio, got " + std::to_string(channels) +
                    " channels");
  if (rate == 0) throw Error(ErrorCode::kMalformedHeader, "zero sample rate");

  PcmSignal out;
  out.sample_rate_hz = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    std::size_t n = data_size / 2;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto v = static_cast<std::int16_t>(Le16(data + 2 * i));
      out.samples[i] = v / 32768.0;
    }
  } else if (format == kFormatFloat && bits == 32) {
    std::size_t n = data_size / 4;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      out.samples[i] = std::bit_cast<float>(Le32(data + 4 * i));
  } else {
    throw Error(ErrorCode::kUnsupportedFormat,
                "format tag " + std::to_string(format) + " with " +
                    std::to_string(bits) + " bits per sample");
  }
  if (out.samples.empty())
    throw Error(ErrorCode::kEmptyAudio, "data chunk holds no samples");
  return out;
}

PcmSignal ReadWav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  try {
    return DecodeWav(bytes);
  } catch (const Error &e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<unsigned char> EncodeWav(const PcmSignal &signal,
                                     WavSampleFormat format,
                                     WavWriteReport *report) {
  if (signal.empty())
    throw Error(ErrorCode::kEmptyAudio, "refusing to write an empty signal");
  if (signal.sample_rate_hz <= 0)
    throw Error(ErrorCode::kInvalidArgument, "sample rate must be positive");

  const bool pcm = format == WavSampleFormat::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint16_t block_align = bits / 8;
  const std::size_t data_size = signal.size() * block_align;
  if (data_size > 0xFFFFFFFFu - 36)
    throw Error(ErrorCode::kInvalidArgument, "signal too long for RIFF");

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  PutTag(&out, "RIFF");
  Put32(&out, static_cast<std::uint32_t>(36 + data_size));
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  Put32(&out, 16);
  Put16(&out, pcm ? kFormatPcm : kFormatFloat);
  Put16(&out, 1);
  Put32(&out, static_cast<std::uint32_t>(signal.sample_rate_hz));
  Put32(&out, static_cast<std::uint32_t>(signal.sample_rate_hz) * block_align);
  Put16(&out, block_align);
  Put16(&out, bits);
  PutTag(&out, "data");
  Put32(&out, static_cast<std::uint32_t>(data_size));

  std::size_t clipped = 0;
  for (double x : signal.samples) {
    if (pcm) {
      if (x > 1.0 || x < -1.0) ++clipped;
      double scaled = std::nearbyint(x * 32768.0);
      scaled = std::clamp(scaled, -32768.0, 32767.0);
      Put16(&out, static_cast<std::uint16_t>(static_cast<std::int16_t>(scaled)));
    } else {
      Put32(&out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
    }
  }
  if (pcm && clipped == signal.size())
    throw Error(ErrorCode::kAllSamplesClipped,
                "every sample is outside [-1, 1]");
  if (report) report->clipped_samples = clipped;
  return out;
}

WavWriteReport WriteWav(const std::filesystem::path &path,
                        const PcmSignal &signal, WavSampleFormat format) {
  WavWriteReport report;
  std::vector<unsigned char> bytes = EncodeWav(signal, format, &report);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
  return report;
}

double MeanPower(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (double x : samples) acc += x * x;
  return acc / static_cast<double>(samples.size());
}

namespace {

std::vector<double> TileTo(const std::vector<double> &noise, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = noise[i % noise.size()];
  return out;
}

void CheckMixInputs(const PcmSignal &clean, const PcmSignal &noise) {
  if (clean.empty() || noise.empty())
    throw Error(ErrorCode::kEmptyAudio, "mixing requires non-empty inputs");
  if (clean.sample_rate_hz != noise.sample_rate_hz)
    throw Error(ErrorCode::kInvalidArgument,
                "sample rates differ: " + std::to_string(clean.sample_rate_hz) +
                    " vs " + std::to_string(noise.sample_rate_hz));
}

}  // namespace

double NoiseGainForSnr(const PcmSignal &clean, const PcmSignal &noise,
                       double snr_db) {
  CheckMixInputs(clean, noise);
  if (std::isnan(snr_db))
    throw Error(ErrorCode::kInvalidArgument, "SNR is NaN");
  std::vector<double> tiled = TileTo(noise.samples, clean.size());
  double p_clean = MeanPower(clean.samples);
  double p_noise = MeanPower(tiled);
  if (p_clean == 0.0 || p_noise == 0.0)
    throw Error(ErrorCode::kSilentInput, "clean or noise power is zero");
  if (std::isinf(snr_db)) return snr_db > 0 ? 0.0 : HUGE_VAL;
  return std::sqrt(p_clean / (p_noise * std::pow(10.0, snr_db / 10.0)));
}

PcmSignal MixAtSnr(const PcmSignal &clean, const PcmSignal &noise,
                   double snr_db) {
  double gain = NoiseGainForSnr(clean, noise, snr_db);
  if (std::isinf(snr_db) && snr_db > 0) return clean;
  if (std::isinf(gain))
    throw Error(ErrorCode::kInvalidArgument, "SNR of -inf is not mixable");
  PcmSignal out = clean;
  const std::size_t m = noise.size();
  for (std::size_t i = 0; i < out.size(); ++i)
    out.samples[i] += gain * noise.samples[i % m];
  return out;
}

}  // namespace modwd
