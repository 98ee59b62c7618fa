#pragma once

#include "spectrum_split/analytic.hpp"
#include "spectrum_split/errors.hpp"
#include "spectrum_split/params.hpp"

namespace spectrum_split {

// Square lattice of transmitters at (i s, j s) with every receiver displaced
// by the link distance: the reference receiver sits at (shift, 0) relative to
// its own transmitter at the origin. shift always equals params.d here.
struct LatticeLayout {
  double spacing = 0.0;      // s (m), > 0
  double shift = 0.0;        // receiver displacement (m); = d of the params
  int truncation_cells = 96; // half-width of the summation window, >= 8
};

LatticeLayout make_layout(const NetworkParams& params, double spacing,
                          int truncation_cells = 96);

// Density that no arrangement of transmitters can beat at per-band spectral
// efficiency b: every receiver needs a clear disk of radius d beta^(1/alpha),
// giving lambda <= (1/(pi d^2)) beta^(-2/alpha).
CapacityResult det_upper_bound(const NetworkParams& params, double b);

// SIR of the reference receiver against all other lattice transmitters,
// summed over |i|, |j| <= truncation_cells and corrected with an integral
// bound on the omitted tail. Throws ConvergenceError("insufficient
// truncation") when the tail bound exceeds 1% of the partial sum. Scale
// invariant: scaling spacing, shift, and d jointly leaves the SIR unchanged.
// shift >= spacing is permitted; the nearest interferer is then closer than
// the desired transmitter and the SIR drops below 1.
double lattice_sir(const NetworkParams& params, const LatticeLayout& layout);

// Densest square lattice that decodes b outage-free: binary search for the
// smallest spacing with lattice_sir >= 2^b - 1, returned as lambda = 1/s^2.
// The returned spacing itself satisfies the SIR constraint, so the density is
// achievable (a true lower bound on the deterministic optimum).
CapacityResult lattice_max_density(const NetworkParams& params, double b);

}  // namespace spectrum_split
