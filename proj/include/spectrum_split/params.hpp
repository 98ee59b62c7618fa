#pragma once

#include <optional>

namespace spectrum_split {

// Physical description of a population of transmitter-receiver pairs that
// share a band of total width w. Every pair demands rate r over distance d.
// n0 == 0 selects the interference-limited regime and is the only way to
// express infinite SNR; there is no sentinel value on the SNR itself.
struct NetworkParams {
  double alpha = 4.0;  // path-loss exponent, strictly > 2
  double d = 10.0;     // tx-rx separation (m), > 0
  double rho = 1.0;    // transmit power (W), > 0
  double n0 = 0.0;     // noise spectral density (W/Hz), >= 0; 0 = interference-limited
  double w = 1.0;      // total system bandwidth (Hz), > 0
  double r = 1.0;      // per-pair rate requirement (bit/s), > 0

  // Normalized rate demand r/w (bit/s/Hz across the whole band).
  double utilization() const { return r / w; }

  bool interference_limited() const { return n0 == 0.0; }

  // rho d^-alpha / (n0 w). Only meaningful in the finite-SNR regime;
  // throws std::logic_error when interference_limited().
  double snr() const;

  // Throws std::invalid_argument on any violated field constraint.
  void validate() const;

  // Convenience constructor used by the CLI and the experiment runners:
  // unit bandwidth and power, rate = util, with n0 chosen so that the
  // resulting snr() equals snr_linear (or 0 when snr_linear is empty).
  static NetworkParams from_utilization(double alpha, double d, double util,
                                        std::optional<double> snr_linear);
};

}  // namespace spectrum_split
