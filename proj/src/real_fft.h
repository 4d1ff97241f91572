// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_SRC_REAL_FFT_H_
#define MODWD_SRC_REAL_FFT_H_

#include <complex>
#include <span>

#include <fftw3.h>

namespace modwd::internal {

// Owns a pair of FFTW plans (r2c and c2r) for one transform length and the
// aligned buffers they run on. Not shareable across threads; create one per
// call site. Planning itself is serialized internally.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  int size() const { return n_; }

  // in.size() <= n (zero-padded), out.size() == n / 2 + 1.
  void Forward(std::span<const double> in, std::span<std::complex<double>> out);

  // Unnormalized inverse of the one-sided spectrum; out.size() <= n receives
  // the leading samples of the n-point result divided by n.
  void Inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  int n_;
  double *time_ = nullptr;
  fftw_complex *freq_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

}  // namespace modwd::internal

#endif  // MODWD_SRC_REAL_FFT_H_
