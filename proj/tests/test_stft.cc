// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "modwd/error.h"
#include "modwd/stft.h"
#include "speech_fixtures.h"

namespace modwd {
namespace {

// Quadratic-time one-sided DFT of a zero-padded frame.
std::vector<std::complex<double>> DirectDft(const std::vector<double> &frame,
                                            int fft_size) {
  std::vector<std::complex<double>> out(fft_size / 2 + 1);
  for (int k = 0; k <= fft_size / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < frame.size(); ++n)
      acc += frame[n] * std::polar(1.0, -2.0 * std::numbers::pi * k *
                                            static_cast<double>(n) / fft_size);
    out[k] = acc;
  }
  return out;
}

PcmSignal FromVector(std::vector<double> v) {
  PcmSignal s;
  s.samples = std::move(v);
  return s;
}

TEST_CASE("Hamming window values") {
  auto w = HammingWindow(161);
  CHECK(w[0] == doctest::Approx(0.08).epsilon(1e-15));
  CHECK(w[80] == doctest::Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 0; i < w.size(); ++i) CHECK(w[i] == doctest::Approx(w[160 - i]).epsilon(1e-14));

  auto even = HammingWindow(160);
  for (std::size_t i = 0; i < 160; ++i) CHECK(even[i] == doctest::Approx(even[159 - i]).epsilon(1e-14));

  auto periodic = HammingWindow(160, /*periodic=*/true);
  CHECK(periodic[0] == doctest::Approx(0.08));
  CHECK(periodic[80] == doctest::Approx(1.0));

  CHECK_THROWS_AS(HammingWindow(1), Error);
}

TEST_CASE("default framing of one second at 8 kHz") {
  PcmSignal s = testing::WhiteNoise(1, 8000);
  ComplexSpectrogram spec = Stft(s, {});
  CHECK(spec.num_frames() == 99);
  CHECK(spec.num_bins() == 129);
  CHECK(SynthesisLength(99, {}) == 98 * 80 + 160);
}

TEST_CASE("DC input puts c * sum(w) in bin 0") {
  const double c = 0.3;
  PcmSignal s = FromVector(std::vector<double>(1000, c));
  ComplexSpectrogram spec = Stft(s, {});
  double wsum = 0.0;
  for (double v : HammingWindow(160)) wsum += v;
  for (std::size_t m = 0; m < spec.num_frames(); ++m)
    CHECK(std::abs(spec.values(m, 0)) == doctest::Approx(c * wsum).epsilon(1e-12));
}

TEST_CASE("bin-centred sine matches a direct DFT and peaks at its bin") {
  const int k0 = 20;
  const std::size_t n = 2000;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = std::sin(2.0 * std::numbers::pi * k0 * static_cast<double>(i) / 256.0);
  ComplexSpectrogram spec = Stft(FromVector(x), {});

  const std::size_t m = 7;
  auto w = HammingWindow(160);
  std::vector<double> frame(160);
  for (std::size_t i = 0; i < 160; ++i) frame[i] = x[m * 80 + i] * w[i];
  auto oracle = DirectDft(frame, 256);
  double worst = 0.0;
  for (std::size_t k = 0; k < oracle.size(); ++k)
    worst = std::max(worst, std::abs(spec.values(m, k) - oracle[k]));
  CHECK(worst < 1e-10);

  for (std::size_t f = 0; f < spec.num_frames(); ++f) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < spec.num_bins(); ++k)
      if (std::abs(spec.values(f, k)) > std::abs(spec.values(f, best))) best = k;
    CHECK(best == static_cast<std::size_t>(k0));
  }
}

TEST_CASE("ISTFT inverts STFT on every resynthesized sample") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PcmSignal x = FromVector(testing::RandomVector(seed, 1200 + 37 * seed));
    PcmSignal y = Istft(ToMagPhase(Stft(x, {})));
    REQUIRE(y.size() == SynthesisLength(NumFrames(x.size(), {}), {}));
    CHECK(x.size() - y.size() < 80);
    double worst = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
      worst = std::max(worst, std::abs(y.samples[i] - x.samples[i]));
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("reconstruction holds for every length from 3 frames up") {
  for (std::size_t n = 480; n < 480 + 200; n += 7) {
    PcmSignal x = FromVector(testing::RandomVector(n, n));
    PcmSignal y = Istft(ToMagPhase(Stft(x, {})));
    double worst = 0.0;
    for (std::size_t i = 160; i + 160 < n && i < y.size(); ++i)
      worst = std::max(worst, std::abs(y.samples[i] - x.samples[i]));
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("periodic window also reconstructs") {
  FrameParams p;
  p.window = WindowKind::kHammingPeriodic;
  PcmSignal x = FromVector(testing::RandomVector(9, 1000));
  PcmSignal y = Istft(ToMagPhase(Stft(x, p)));
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(std::abs(y.samples[i] - x.samples[i]) <= 1e-9);
}

TEST_CASE("zero magnitude resynthesizes silence") {
  MagPhase spec = ToMagPhase(Stft(FromVector(testing::RandomVector(2, 800)), {}));
  for (double &v : spec.magnitude.data()) v = 0.0;
  for (double v : Istft(spec).samples) CHECK(v == 0.0);
}

TEST_CASE("STFT -> ISTFT -> STFT of speech is stable") {
  PcmSignal x = testing::SynthesizeSpeech(21);
  ComplexSpectrogram first = Stft(x, {});
  ComplexSpectrogram second = Stft(Istft(ToMagPhase(first)), {});
  REQUIRE(second.num_frames() == first.num_frames());
  double diff = 0.0, ref = 0.0;
  for (std::size_t m = 2; m + 2 < first.num_frames(); ++m)
    for (std::size_t k = 0; k < first.num_bins(); ++k) {
      diff += std::norm(first.values(m, k) - second.values(m, k));
      ref += std::norm(first.values(m, k));
    }
  CHECK(std::sqrt(diff / ref) <= 1e-5);
}

TEST_CASE("linearity and per-frame Parseval") {
  PcmSignal x = FromVector(testing::RandomVector(5, 1500));
  PcmSignal ax = x;
  const double a = -2.75;
  for (double &v : ax.samples) v *= a;
  ComplexSpectrogram sx = Stft(x, {});
  ComplexSpectrogram sax = Stft(ax, {});
  for (std::size_t i = 0; i < sx.values.data().size(); ++i)
    CHECK(std::abs(sax.values.data()[i] - a * sx.values.data()[i]) <=
          1e-12 * (1.0 + std::abs(a * sx.values.data()[i])));

  auto w = HammingWindow(160);
  for (std::size_t m = 0; m < sx.num_frames(); ++m) {
    double time_energy = 0.0;
    for (std::size_t i = 0; i < 160; ++i) {
      const double v = x.samples[m * 80 + i] * w[i];
      time_energy += v * v;
    }
    // Two-sided sum from the one-sided bins: DC and Nyquist once, rest twice.
    double freq_energy = 0.0;
    for (std::size_t k = 0; k < 129; ++k)
      freq_energy += (k == 0 || k == 128 ? 1.0 : 2.0) * std::norm(sx.values(m, k));
    CHECK(time_energy == doctest::Approx(freq_energy / 256.0).epsilon(1e-9));
  }
}

TEST_CASE("magnitude/phase recombination reproduces the complex grid") {
  ComplexSpectrogram spec = Stft(testing::SynthesizeSpeech(8, 0.5), {});
  ComplexSpectrogram back = ToComplex(ToMagPhase(spec));
  const MagPhase mp = ToMagPhase(spec);
  for (double v : mp.magnitude.data()) CHECK(v >= 0.0);
  for (double v : mp.phase.data()) {
    CHECK(v > -std::numbers::pi - 1e-15);
    CHECK(v <= std::numbers::pi);
  }
  for (std::size_t i = 0; i < spec.values.data().size(); ++i)
    CHECK(std::abs(back.values.data()[i] - spec.values.data()[i]) <=
          1e-12 * std::max(1e-300, std::abs(spec.values.data()[i])) + 1e-300);
}

TEST_CASE("STFT and ISTFT error paths") {
  try {
    Stft(FromVector(std::vector<double>(159, 0.0)), {});
    FAIL("expected SignalTooShort");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kSignalTooShort);
  }

  FrameParams bad;
  bad.hop = 200;
  CHECK_THROWS_AS(Stft(FromVector(std::vector<double>(1000, 0.0)), bad), Error);

  MagPhase spec = ToMagPhase(Stft(FromVector(testing::RandomVector(1, 800)), {}));
  spec.phase = Plane(spec.num_frames(), 10);
  try {
    Istft(spec);
    FAIL("expected DimensionMismatch");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
}

}  // namespace
}  // namespace modwd
