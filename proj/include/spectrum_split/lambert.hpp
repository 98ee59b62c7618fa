#pragma once

namespace spectrum_split {

// Principal branch of the Lambert W function on [-1/e, 0], the range needed
// by the spectral-efficiency optimizer. Series initial guess polished by
// damped Halley iteration; the result w lies in [-1, 0] and satisfies
// |w e^w - z| <= 1e-12. Throws std::domain_error outside the interval.
double lambert_w0(double z);

}  // namespace spectrum_split
