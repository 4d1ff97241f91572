// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "real_fft.h"

#include <algorithm>
#include <mutex>

#include "modwd/error.h"

namespace modwd::internal {

namespace {
// The FFTW planner is not thread-safe; execution is.
std::mutex &PlannerMutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

RealFft::RealFft(int n) : n_(n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "FFT size must be >= 2");
  std::lock_guard<std::mutex> lock(PlannerMutex());
  time_ = fftw_alloc_real(static_cast<std::size_t>(n));
  freq_ = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  forward_ = fftw_plan_dft_r2c_1d(n, time_, freq_, FFTW_ESTIMATE);
  inverse_ = fftw_plan_dft_c2r_1d(n, freq_, time_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(inverse_);
  fftw_free(time_);
  fftw_free(freq_);
}

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) {
  std::fill(time_, time_ + n_, 0.0);
  std::copy(in.begin(), in.end(), time_);
  fftw_execute(forward_);
  for (int k = 0; k <= n_ / 2; ++k) out[k] = {freq_[k][0], freq_[k][1]};
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) {
  for (int k = 0; k <= n_ / 2; ++k) {
    freq_[k][0] = in[k].real();
    freq_[k][1] = in[k].imag();
  }
  // A real signal's DC and Nyquist bins are real; c2r ignores their
  // imaginary parts, which is the conjugate-symmetric extension.
  fftw_execute(inverse_);
  const double scale = 1.0 / n_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = time_[i] * scale;
}

}  // namespace modwd::internal
