// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "speech_fixtures.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace modwd::testing {

namespace {

struct Vowel {
  std::array<double, 3> formant_hz;
  std::array<double, 3> bandwidth_hz;
};

// Rough adult formant targets.
constexpr std::array<Vowel, 6> kVowels = {{
    {{730, 1090, 2440}, {80, 90, 120}},  // a
    {{270, 2290, 3010}, {60, 100, 140}},  // i
    {{300, 870, 2240}, {60, 90, 120}},   // u
    {{530, 1840, 2480}, {70, 100, 130}},  // e
    {{570, 840, 2410}, {70, 90, 120}},   // o
    {{660, 1720, 2410}, {80, 100, 130}},  // ae
}};

double FormantGain(const Vowel &v, double f) {
  double g = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double x = (f - v.formant_hz[i]) / v.bandwidth_hz[i];
    g += (i == 0 ? 1.0 : i == 1 ? 0.6 : 0.3) / (1.0 + x * x);
  }
  // -6 dB/octave source tilt above 200 Hz.
  return g * std::min(1.0, 200.0 / f) + 0.01;
}

}  // namespace

PcmSignal SynthesizeSpeech(std::uint64_t seed, double seconds,
                           int sample_rate_hz) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double fs = sample_rate_hz;
  const auto total = static_cast<std::size_t>(seconds * fs);
  std::vector<double> x(total, 0.0);

  std::size_t pos = static_cast<std::size_t>(0.15 * fs);
  const auto tail = static_cast<std::size_t>(0.1 * fs);
  while (pos + tail < total) {
    const auto len = static_cast<std::size_t>((0.12 + 0.16 * uni(rng)) * fs);
    if (pos + len + tail >= total) break;
    const Vowel &vowel = kVowels[static_cast<std::size_t>(uni(rng) * 6) % 6];
    const double f0_start = 100.0 + 100.0 * uni(rng);
    const double f0_end = f0_start * (0.85 + 0.3 * uni(rng));
    const double level = 0.5 + 0.5 * uni(rng);

    // Optional fricative onset: differenced white noise.
    std::size_t voiced_start = pos;
    if (uni(rng) < 0.4) {
      const auto fric = static_cast<std::size_t>((0.03 + 0.04 * uni(rng)) * fs);
      double prev = 0.0;
      for (std::size_t i = 0; i < fric && pos + i < total; ++i) {
        const double w = gauss(rng);
        const double env = std::sin(std::numbers::pi * i / fric);
        x[pos + i] += 0.08 * level * env * (w - prev);
        prev = w;
      }
      voiced_start = pos + fric / 2;
    }

    std::vector<double> harmonic_phase(64);
    for (double &p : harmonic_phase) p = 2.0 * std::numbers::pi * uni(rng);
    double f0_phase = 0.0;
    for (std::size_t i = 0; i < len && voiced_start + i < total; ++i) {
      const double t = static_cast<double>(i) / len;
      const double f0 = f0_start + (f0_end - f0_start) * t;
      f0_phase += 2.0 * std::numbers::pi * f0 / fs;
      const double env = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * t);
      double s = 0.0;
      for (std::size_t h = 1; h < harmonic_phase.size(); ++h) {
        const double f = f0 * static_cast<double>(h);
        if (f > 0.47 * fs) break;
        s += FormantGain(vowel, f) *
             std::sin(static_cast<double>(h) * f0_phase + harmonic_phase[h]);
      }
      x[voiced_start + i] += level * env * s;
    }
    pos = voiced_start + len +
          static_cast<std::size_t>((0.03 + 0.09 * uni(rng)) * fs);
    if (uni(rng) < 0.15) pos += static_cast<std::size_t>(0.15 * fs);
  }

  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0.0 ? 0.5 / peak : 1.0;
  PcmSignal out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.resize(total);
  for (std::size_t i = 0; i < total; ++i)
    out.samples[i] = x[i] * scale + 1.5e-4 * gauss(rng);
  return out;
}

PcmSignal WhiteNoise(std::uint64_t seed, std::size_t n, int sample_rate_hz) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  PcmSignal out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.resize(n);
  for (double &v : out.samples) v = gauss(rng);
  return out;
}

std::vector<double> RandomVector(std::uint64_t seed, std::size_t n, double lo,
                                 double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> out(n);
  for (double &v : out) v = uni(rng);
  return out;
}

PcmSignal UnitPowerSine(double freq_hz, std::size_t n, int sample_rate_hz) {
  PcmSignal out;
  out.sample_rate_hz = sample_rate_hz;
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.samples[i] = std::numbers::sqrt2 *
                     std::sin(2.0 * std::numbers::pi * freq_hz * i / sample_rate_hz);
  return out;
}

}  // namespace modwd::testing
