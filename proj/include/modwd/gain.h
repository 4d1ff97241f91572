// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef MODWD_GAIN_H_
#define MODWD_GAIN_H_

namespace modwd {

// Spectral gain laws as functions of the a priori SNR xi and the a
// posteriori SNR gamma (both linear). The *Raw variants are unclamped;
// ClampGain maps any of them into [floor, 1].

// E1(x) = integral from x to infinity of exp(-t) / t dt, x > 0.
double ExpIntE1(double x);

// xi / (1 + xi)
double WienerGain(double xi);

// Ephraim-Malah MMSE short-time spectral amplitude gain:
//   (sqrt(pi) / 2) (sqrt(v) / gamma) exp(-v / 2)
//       [(1 + v) I0(v / 2) + v I1(v / 2)],   v = xi gamma / (1 + xi).
// For v > kStsaAsymptoticNu the Wiener limit xi / (1 + xi) is returned.
// gamma == 0 yields +infinity.
double StsaGainRaw(double xi, double gamma);

// Log-spectral amplitude gain: xi / (1 + xi) * exp(E1(v) / 2).
// v == 0 yields +infinity.
double LogStsaGainRaw(double xi, double gamma);

double ClampGain(double gain, double floor);

inline constexpr double kStsaAsymptoticNu = 700.0;

}  // namespace modwd

#endif  // MODWD_GAIN_H_
