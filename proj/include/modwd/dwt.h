// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_DWT_H_
#define MODWD_DWT_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace modwd {

// Analysis (dec_*) and synthesis (rec_*) filters of a two-channel
// biorthogonal bank, all zero-padded to one common length. Filters are used
// as convolution kernels: y[i] = sum_j h[j] x[i - j].
struct BiorFilterBank {
  std::string name;
  std::vector<double> dec_lo;
  std::vector<double> dec_hi;
  std::vector<double> rec_lo;
  std::vector<double> rec_hi;

  std::size_t filter_len() const { return dec_lo.size(); }
};

// The B-spline biorthogonal bank "bior3.7": reconstruction order 3 (the
// synthesis lowpass is the cubic B-spline sqrt(2)/8 [1 3 3 1]), decomposition
// order 7 (a 16-tap analysis lowpass). Naming follows the Nr.Nd convention
// used by MATLAB and PyWavelets. The embedded taps are checked on first use
// by ValidateFilterBank; a failure throws.
const BiorFilterBank &Bior37();

// Throws InvalidArgument if the bank is malformed, its highpass has nonzero
// mean, its lowpass DC gain is not sqrt(2), or an impulse does not survive
// an analysis/synthesis round trip to within 1e-10.
void ValidateFilterBank(const BiorFilterBank &bank);

// Boundary extension used by the analysis step. Both modes reconstruct
// perfectly; symmetric is the default.
enum class Extension {
  kSymmetric,  // half-sample symmetric: ... x1 x0 | x0 x1 ... x(n-1) | x(n-1) ...
  kZero,
};

// One-level decomposition of a sequence of length original_len.
struct WaveletPair {
  std::vector<double> approx;
  std::vector<double> detail;
  std::size_t original_len = 0;

  bool operator==(const WaveletPair &) const = default;
};

// floor((n + filter_len - 1) / 2)
std::size_t CoefficientLength(std::size_t n, std::size_t filter_len);

// Extends by filter_len - 1 on both sides, filters with dec_lo/dec_hi and
// keeps the odd-indexed outputs of the full convolution.
WaveletPair Dwt1(std::span<const double> seq, const BiorFilterBank &bank,
                 Extension extension = Extension::kSymmetric);

// Upsamples by two, filters with rec_lo/rec_hi, sums and drops the
// filter_len - 2 sample transient so the result has original_len samples.
std::vector<double> Idwt1(const WaveletPair &pair, const BiorFilterBank &bank);

}  // namespace modwd

#endif  // MODWD_DWT_H_
