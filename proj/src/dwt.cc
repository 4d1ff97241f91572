// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/dwt.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "modwd/error.h"

namespace modwd {

namespace {

// bior3.7 analysis lowpass in units of sqrt(2) / 16384. Symmetric, so only
// the first half is listed.
constexpr std::array<int, 8> kBior37DecLoHalf = {35,  -105, -195,  865,
                                                 363, -3489, -307, 11025};
// Synthesis lowpass in units of sqrt(2) / 8, occupying taps 6..9.
constexpr std::array<int, 4> kBior37RecLoCore = {1, 3, 3, 1};

BiorFilterBank BuildBior37() {
  constexpr std::size_t kLen = 16;
  const double dec_scale = std::numbers::sqrt2 / 16384.0;
  const double rec_scale = std::numbers::sqrt2 / 8.0;

  BiorFilterBank bank;
  bank.name = "bior3.7";
  bank.dec_lo.resize(kLen);
  bank.rec_lo.assign(kLen, 0.0);
  for (std::size_t i = 0; i < 8; ++i) {
    bank.dec_lo[i] = kBior37DecLoHalf[i] * dec_scale;
    bank.dec_lo[kLen - 1 - i] = bank.dec_lo[i];
  }
  for (std::size_t i = 0; i < 4; ++i)
    bank.rec_lo[6 + i] = kBior37RecLoCore[i] * rec_scale;

  // Quadrature mirror relations: the highpass filters are the opposite
  // lowpass filters modulated by (-1)^n.
  bank.dec_hi.resize(kLen);
  bank.rec_hi.resize(kLen);
  for (std::size_t i = 0; i < kLen; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    bank.dec_hi[i] = -sign * bank.rec_lo[i];
    bank.rec_hi[i] = sign * bank.dec_lo[i];
  }
  return bank;
}

// Maps an index of the extended sequence onto [0, n) under half-sample
// symmetric extension. Handles offsets larger than n by period 2n.
std::size_t ReflectIndex(std::int64_t i, std::int64_t n) {
  const std::int64_t period = 2 * n;
  std::int64_t r = i % period;
  if (r < 0) r += period;
  if (r >= n) r = period - 1 - r;
  return static_cast<std::size_t>(r);
}

}  // namespace

const BiorFilterBank &Bior37() {
  static const BiorFilterBank bank = [] {
    BiorFilterBank b = BuildBior37();
    ValidateFilterBank(b);
    return b;
  }();
  return bank;
}

void ValidateFilterBank(const BiorFilterBank &bank) {
  const std::size_t len = bank.filter_len();
  if (len < 2 || len % 2 != 0 || bank.dec_hi.size() != len ||
      bank.rec_lo.size() != len || bank.rec_hi.size() != len)
    throw Error(ErrorCode::kInvalidArgument,
                bank.name + ": filters must share one even length");

  double hi_sum = 0.0, lo_sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    hi_sum += bank.dec_hi[i];
    lo_sum += bank.dec_lo[i];
  }
  if (std::abs(hi_sum) > 1e-12)
    throw Error(ErrorCode::kInvalidArgument,
                bank.name + ": analysis highpass has nonzero mean");
  if (std::abs(lo_sum - std::numbers::sqrt2) > 1e-12)
    throw Error(ErrorCode::kInvalidArgument,
                bank.name + ": analysis lowpass DC gain is not sqrt(2)");

  std::vector<double> impulse(32, 0.0);
  impulse[0] = 1.0;
  std::vector<double> back = Idwt1(Dwt1(impulse, bank), bank);
  for (std::size_t i = 0; i < impulse.size(); ++i)
    if (std::abs(back[i] - impulse[i]) > 1e-10)
      throw Error(ErrorCode::kInvalidArgument,
                  bank.name + ": impulse round trip is not exact");
}

std::size_t CoefficientLength(std::size_t n, std::size_t filter_len) {
  return (n + filter_len - 1) / 2;
}

WaveletPair Dwt1(std::span<const double> seq, const BiorFilterBank &bank,
                 Extension extension) {
  if (seq.size() < 2)
    throw Error(ErrorCode::kSequenceTooShort,
                "DWT needs at least 2 samples, got " +
                    std::to_string(seq.size()));
  const auto n = static_cast<std::int64_t>(seq.size());
  const std::size_t len = bank.filter_len();
  const std::size_t out_len = CoefficientLength(seq.size(), len);

  auto sample = [&](std::int64_t i) -> double {
    if (i >= 0 && i < n) return seq[static_cast<std::size_t>(i)];
    if (extension == Extension::kZero) return 0.0;
    return seq[ReflectIndex(i, n)];
  };

  WaveletPair out;
  out.original_len = seq.size();
  out.approx.resize(out_len);
  out.detail.resize(out_len);
  for (std::size_t o = 0; o < out_len; ++o) {
    const auto center = static_cast<std::int64_t>(2 * o + 1);
    double lo = 0.0, hi = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
      const double x = sample(center - static_cast<std::int64_t>(j));
      lo += bank.dec_lo[j] * x;
      hi += bank.dec_hi[j] * x;
    }
    out.approx[o] = lo;
    out.detail[o] = hi;
  }
  return out;
}

std::vector<double> Idwt1(const WaveletPair &pair, const BiorFilterBank &bank) {
  const std::size_t len = bank.filter_len();
  const std::size_t coeffs = pair.approx.size();
  if (pair.detail.size() != coeffs)
    throw Error(ErrorCode::kInconsistentPair,
                "approx has " + std::to_string(coeffs) + " coefficients, detail " +
                    std::to_string(pair.detail.size()));
  if (pair.original_len < 2 ||
      CoefficientLength(pair.original_len, len) != coeffs)
    throw Error(ErrorCode::kInconsistentPair,
                std::to_string(coeffs) + " coefficients cannot describe " +
                    std::to_string(pair.original_len) + " samples");

  // x[n] = y[n + len - 2] where y[t] = sum_o c[o] g[t - 2o].
  std::vector<double> out(pair.original_len, 0.0);
  const std::size_t delay = len - 2;
  for (std::size_t n = 0; n < out.size(); ++n) {
    const std::size_t t = n + delay;
    // Only o with 0 <= t - 2o < len contribute.
    const std::size_t o_hi = std::min(t / 2, coeffs - 1);
    const std::size_t o_lo = t + 1 > len ? (t + 1 - len + 1) / 2 : 0;
    double acc = 0.0;
    for (std::size_t o = o_lo; o <= o_hi; ++o) {
      const std::size_t tap = t - 2 * o;
      acc += pair.approx[o] * bank.rec_lo[tap] + pair.detail[o] * bank.rec_hi[tap];
    }
    out[n] = acc;
  }
  return out;
}

}  // namespace modwd
