// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "modwd/error.h"
#include "modwd/modwd.h"
#include "speech_fixtures.h"

namespace modwd {
namespace {

double Norm(const std::vector<double> &v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double Correlation(const Plane &a, const Plane &b) {
  const auto &x = a.data();
  const auto &y = b.data();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

MagPhase SpeechSpectrogram(std::uint64_t seed, double seconds = 1.0) {
  return ToMagPhase(Stft(testing::SynthesizeSpeech(seed, seconds), {}));
}

TEST_CASE("row decomposition shapes") {
  MagPhase spec = SpeechSpectrogram(1, 1.0);
  REQUIRE(spec.num_frames() == 99);
  WaveletSpectrogram ws = DecomposeRows(spec.magnitude, Bior37());
  CHECK(ws.num_bins() == 129);
  CHECK(ws.num_frames() == 99);
  CHECK(ws.coeff_len() == 57);
}

TEST_CASE("bins are processed independently") {
  MagPhase spec = SpeechSpectrogram(2, 0.6);
  const std::size_t k_count = spec.num_bins();
  Plane shuffled(spec.num_frames(), k_count);
  for (std::size_t k = 0; k < k_count; ++k)
    shuffled.set_column((k * 37) % k_count,
                        std::span<const double>(spec.magnitude.column(k)));
  Plane a = ModwdMagnitude(spec.magnitude, 0.25, Bior37());
  Plane b = ModwdMagnitude(shuffled, 0.25, Bior37());
  for (std::size_t k = 0; k < k_count; ++k)
    CHECK(a.column(k) == b.column((k * 37) % k_count));
}

TEST_CASE("alpha identities") {
  MagPhase spec = SpeechSpectrogram(3);

  Plane same = ModwdMagnitude(spec.magnitude, 1.0, Bior37(), NegativeMagnitudes::kKeep);
  double worst = 0.0;
  for (std::size_t i = 0; i < same.data().size(); ++i)
    worst = std::max(worst, std::abs(same.data()[i] - spec.magnitude.data()[i]));
  CHECK(worst < 1e-10);

  ModwdConfig cfg;
  cfg.alpha = 1.0;
  MagPhase out = ApplyModwd(spec, cfg);
  CHECK(out.magnitude == spec.magnitude);
  CHECK(Istft(out).samples == Istft(spec).samples);

  WaveletSpectrogram ws = ScaleDetail(DecomposeRows(spec.magnitude, Bior37()), 0.0);
  for (const WaveletPair &row : ws.rows)
    for (double d : row.detail) {
      CHECK(d == 0.0);
      CHECK_FALSE(std::signbit(d));
    }
}

TEST_CASE("output is affine in alpha and the detail energy scales with alpha squared") {
  MagPhase spec = SpeechSpectrogram(4);
  auto at = [&](double alpha) {
    return ModwdMagnitude(spec.magnitude, alpha, Bior37(), NegativeMagnitudes::kKeep);
  };
  Plane y0 = at(0.0), y1 = at(1.0);
  std::vector<double> diff1(y0.data().size());
  for (std::size_t i = 0; i < diff1.size(); ++i) diff1[i] = y1.data()[i] - y0.data()[i];

  for (double alpha : {0.25, 0.5, 0.75}) {
    Plane ya = at(alpha);
    std::vector<double> diffa(diff1.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < diffa.size(); ++i) {
      diffa[i] = ya.data()[i] - y0.data()[i];
      worst = std::max(worst, std::abs(ya.data()[i] - (y0.data()[i] + alpha * diff1[i])));
    }
    CHECK(worst < 1e-10);
    CHECK(Norm(diffa) == doctest::Approx(alpha * Norm(diff1)).epsilon(1e-9));
  }

  WaveletSpectrogram ws = DecomposeRows(spec.magnitude, Bior37());
  WaveletSpectrogram half = ScaleDetail(ws, 0.5);
  for (std::size_t k = 0; k < ws.num_bins(); ++k) {
    CHECK(half.rows[k].approx == ws.rows[k].approx);
    CHECK(Norm(half.rows[k].detail) == doctest::Approx(0.5 * Norm(ws.rows[k].detail)));
  }
}

TEST_CASE("clamping removes negative magnitudes") {
  MagPhase spec = SpeechSpectrogram(5);
  Plane kept = ModwdMagnitude(spec.magnitude, 0.0, Bior37(), NegativeMagnitudes::kKeep);
  Plane clamped = ModwdMagnitude(spec.magnitude, 0.0, Bior37());
  for (std::size_t i = 0; i < kept.data().size(); ++i)
    CHECK(clamped.data()[i] == std::max(0.0, kept.data()[i]));
}

TEST_CASE("phase is carried through unchanged") {
  MagPhase spec = SpeechSpectrogram(6);
  ModwdConfig cfg;
  cfg.alpha = 0.25;
  MagPhase out = ApplyModwd(spec, cfg);
  CHECK(out.phase == spec.phase);
  CHECK(out.params == spec.params);
}

TEST_CASE("configuration validation") {
  ModwdConfig cfg;
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg.alpha = -0.1;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg.alpha = 0.0;
  CHECK_NOTHROW(cfg.Validate());
}

TEST_CASE("approximation payload") {
  // 400 frames of 129 bins.
  PcmSignal x = testing::SynthesizeSpeech(7, 4.0);
  x.samples.resize(399 * 80 + 160);
  MagPhase spec = ToMagPhase(Stft(x, {}));
  REQUIRE(spec.num_frames() == 400);
  WaveletSpectrogram ws = DecomposeRows(spec.magnitude, Bior37());
  CHECK(PayloadFloatCount(ws) == 26703);
  CHECK(static_cast<double>(PayloadFloatCount(ws)) / spec.magnitude.data().size() ==
        doctest::Approx(26703.0 / 51600.0));

  std::vector<unsigned char> bytes = SerializeApproximationPayload(ws);
  CHECK(bytes.size() == kPayloadHeaderBytes + 26703 * sizeof(double));
  PayloadHeader h = ReadPayloadHeader(bytes);
  CHECK(h == PayloadHeader{129, 207, 400, 256});

  WaveletSpectrogram back = DeserializeApproximationPayload(bytes, Bior37());
  WaveletSpectrogram zeroed = ScaleDetail(ws, 0.0);
  CHECK(back == zeroed);
  CHECK(ReconstructRows(back, Bior37()) == ReconstructRows(zeroed, Bior37()));

  std::vector<unsigned char> truncated(bytes.begin(), bytes.end() - 8);
  try {
    DeserializeApproximationPayload(truncated, Bior37());
    FAIL("expected VersionError");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kVersionError);
  }
  std::vector<unsigned char> tiny(bytes.begin(), bytes.begin() + 10);
  CHECK_THROWS_AS(ReadPayloadHeader(tiny), Error);

  FrameParams other;
  other.fft_size = 512;
  CHECK_THROWS_AS(DeserializeApproximationPayload(bytes, Bior37(), other), Error);
}

TEST_CASE("exported stages") {
  PcmSignal x = testing::SynthesizeSpeech(8, 1.5);
  ModwdConfig cfg;
  cfg.alpha = 1.0;
  SpectrogramStages full = ExportSpectrogramStages(x, cfg);
  double worst = 0.0;
  for (std::size_t i = 0; i < full.original.data().size(); ++i)
    worst = std::max(worst, std::abs(full.original.data()[i] - full.reconstructed.data()[i]));
  CHECK(worst < 1e-10);
  CHECK(full.approximation.rows() == CoefficientLength(full.original.rows(), 16));
  CHECK(full.approximation.cols() == full.original.cols());

  cfg.alpha = 0.25;
  SpectrogramStages smoothed = ExportSpectrogramStages(x, cfg);
  const double c_full = Correlation(full.original, full.reconstructed);
  const double c_smooth = Correlation(smoothed.original, smoothed.reconstructed);
  CHECK(c_full > c_smooth);
  CHECK(c_smooth > 0.9);

  double e_approx = 0.0, e_detail = 0.0;
  for (double v : smoothed.approximation.data()) e_approx += v * v;
  for (double v : smoothed.detail.data()) e_detail += v * v;
  CHECK(e_approx > 10.0 * e_detail);
}

TEST_CASE("enhancement needs two frames") {
  PcmSignal x = testing::SynthesizeSpeech(9, 0.5);
  x.samples.resize(160);
  CHECK_THROWS_AS(ModwdEnhance(x, {}), Error);
  x.samples.resize(240);
  x.samples[200] = 0.1;
  CHECK_NOTHROW(ModwdEnhance(x, {}));
}

// Periodogram of y averaged over several white inputs, integrated over
// (pi/2, pi), compared with the closed-form response of the lowpass branch:
// E|Y|^2 = 1/4 |G(w)|^2 (|H(w)|^2 + |H(w + pi)|^2).
TEST_CASE("approximation-only path attenuates the upper half band as predicted") {
  const BiorFilterBank &b = Bior37();
  auto response = [&](const std::vector<double> &h, double w) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < h.size(); ++n)
      acc += h[n] * std::polar(1.0, -w * static_cast<double>(n));
    return std::norm(acc);
  };
  const int grid = 4000;
  double theory_hi = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double w = std::numbers::pi / 2 + (i + 0.5) * (std::numbers::pi / 2) / grid;
    theory_hi += 0.25 * response(b.rec_lo, w) *
                 (response(b.dec_lo, w) + response(b.dec_lo, w + std::numbers::pi));
  }
  theory_hi /= grid;
  const double theory_db = -10.0 * std::log10(theory_hi);

  const std::size_t n = 1024;
  std::vector<std::complex<double>> twiddle(n);
  for (std::size_t i = 0; i < n; ++i)
    twiddle[i] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(i) / n);
  double in_hi = 0.0, out_hi = 0.0;
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    auto x = testing::RandomVector(500 + seed, n);
    WaveletPair p = Dwt1(x, b);
    for (double &d : p.detail) d = 0.0;
    auto y = Idwt1(p, b);
    for (std::size_t k = n / 4 + 1; k < n / 2; ++k) {
      std::complex<double> fx = 0.0, fy = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        fx += x[t] * twiddle[(k * t) % n];
        fy += y[t] * twiddle[(k * t) % n];
      }
      in_hi += std::norm(fx);
      out_hi += std::norm(fy);
    }
  }
  const double measured_db = 10.0 * std::log10(in_hi / out_hi);
  CHECK(std::abs(measured_db - theory_db) < 0.3);
  MESSAGE("upper half-band attenuation: measured " << measured_db
          << " dB, predicted " << theory_db << " dB");
}

}  // namespace
}  // namespace modwd
