#include "spectrum_split/lambert.hpp"

#include <cmath>
#include <stdexcept>

namespace spectrum_split {

// w e^w = z solved on [-1/e, 0]. f is strictly increasing there, so a
// [-1, 0] bracket backs up the Halley steps whenever one would escape.
double lambert_w0(double z) {
  static const double inv_e = std::exp(-1.0);
  if (!(z >= -inv_e && z <= 0.0)) {
    throw std::domain_error("lambert_w0: argument outside [-1/e, 0]");
  }
  if (z == 0.0) return 0.0;

  // Branch-point series in p = sqrt(2 (1 + e z)); the argument can round
  // to a hair below zero at z = -1/e.
  const double p2 = 2.0 * (1.0 + std::exp(1.0) * z);
  if (p2 <= 0.0) return -1.0;

  double w;
  if (z < -0.3235) {
    const double p = std::sqrt(p2);
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  } else {
    w = z * (1.0 + z * (-1.0 + z * (1.5 - (8.0 / 3.0) * z)));
  }

  double lo = -1.0, hi = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    if (std::fabs(f) <= 1e-13) break;
    if (f > 0.0) {
      hi = w < hi ? w : hi;
    } else {
      lo = w > lo ? w : lo;
    }
    const double d1 = ew * (1.0 + w);
    const double denom = d1 * d1 - 0.5 * f * ew * (2.0 + w);
    double next = denom != 0.0 ? w - f * d1 / denom : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == w) break;
    w = next;
  }
  return w;
}

}  // namespace spectrum_split
