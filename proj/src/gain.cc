// Copyright 2026 The ModWD Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "modwd/gain.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace modwd {

double ExpIntE1(double x) {
  if (x <= 0.0) return std::numeric_limits<double>::infinity();
  // libstdc++ evaluates Ei(-x) = -E1(x) with the power series below 1 and
  // the continued fraction above.
  return -std::expint(-x);
}

double WienerGain(double xi) { return xi / (1.0 + xi); }

double StsaGainRaw(double xi, double gamma) {
  if (gamma <= 0.0) return std::numeric_limits<double>::infinity();
  const double nu = xi * gamma / (1.0 + xi);
  if (nu > kStsaAsymptoticNu) return WienerGain(xi);
  const double half = nu / 2.0;
  const double bessel = (1.0 + nu) * std::cyl_bessel_i(0.0, half) +
                        nu * std::cyl_bessel_i(1.0, half);
  return std::sqrt(std::numbers::pi) / 2.0 * (std::sqrt(nu) / gamma) *
         std::exp(-half) * bessel;
}

double LogStsaGainRaw(double xi, double gamma) {
  const double nu = xi * gamma / (1.0 + xi);
  if (nu <= 0.0) return std::numeric_limits<double>::infinity();
  return WienerGain(xi) * std::exp(0.5 * ExpIntE1(nu));
}

double ClampGain(double gain, double floor) {
  if (std::isnan(gain)) return floor;
  return std::clamp(gain, floor, 1.0);
}

}  // namespace modwd
