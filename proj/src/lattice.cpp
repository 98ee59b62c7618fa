#include "spectrum_split/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spectrum_split {

namespace {

double threshold_from_rate(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw std::invalid_argument("per-band spectral efficiency must be > 0 and finite");
  }
  const double beta = std::exp2(b) - 1.0;
  if (!std::isfinite(beta)) throw std::overflow_error("threshold overflow");
  return beta;
}

}  // namespace

LatticeLayout make_layout(const NetworkParams& params, double spacing,
                          int truncation_cells) {
  params.validate();
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument("spacing must be > 0 and finite");
  }
  if (truncation_cells < 8) {
    throw std::invalid_argument("truncation_cells must be >= 8");
  }
  return {spacing, params.d, truncation_cells};
}

CapacityResult det_upper_bound(const NetworkParams& params, double b) {
  params.validate();
  const double beta = threshold_from_rate(b);
  // Same floating-point shape as the random-capacity formula at n = 1, so
  // that capacity is epsilon times this bound exactly, not just nearly.
  const double lambda = std::pow(1.0 / beta, 2.0 / params.alpha) /
                        (std::numbers::pi * params.d * params.d);
  return {lambda, CapacityKind::DeterministicUpper, 0.0};
}

double lattice_sir(const NetworkParams& params, const LatticeLayout& layout) {
  params.validate();
  if (!(layout.spacing > 0.0) || !std::isfinite(layout.spacing)) {
    throw std::invalid_argument("spacing must be > 0 and finite");
  }
  if (!(layout.shift > 0.0) || !std::isfinite(layout.shift)) {
    throw std::invalid_argument("shift must be > 0 and finite");
  }
  if (layout.truncation_cells < 8) {
    throw std::invalid_argument("truncation_cells must be >= 8");
  }

  // Everything below is in units of d, so the sum depends only on the two
  // ratios sigma and delta. That is the scale invariance promised above.
  const double sigma = layout.spacing / params.d;
  const double delta = layout.shift / params.d;
  const double alpha = params.alpha;
  const int m = layout.truncation_cells;
  const bool quartic = alpha == 4.0;
  const double half_neg_alpha = -0.5 * alpha;

  double partial = 0.0;
  for (int i = -m; i <= m; ++i) {
    const double dx = i * sigma - delta;
    const double dx2 = dx * dx;
    for (int j = -m; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      const double dy = j * sigma;
      const double sq = dx2 + dy * dy;
      partial += quartic ? 1.0 / (sq * sq) : std::pow(sq, half_neg_alpha);
    }
  }

  // The omitted points all lie beyond radius (m+1) sigma - delta from the
  // receiver; replacing each by the disk of its cell costs at most a cell
  // diagonal, hence the inner radius below. The integral then bounds the
  // area term and the first ring the perimeter term.
  const double tail_radius = (m + 1) * sigma - delta - sigma * std::numbers::sqrt2;
  if (!(tail_radius > 0.0)) {
    throw ConvergenceError("insufficient truncation: tail radius not positive");
  }
  const double tail =
      (2.0 * std::numbers::pi / (sigma * sigma)) *
      (std::pow(tail_radius, 2.0 - alpha) / (alpha - 2.0) +
       (sigma / std::numbers::sqrt2) * std::pow(tail_radius, 1.0 - alpha) / (alpha - 1.0));
  if (tail > 0.01 * partial) {
    throw ConvergenceError("insufficient truncation: tail bound exceeds 1% of the partial sum");
  }
  return 1.0 / (partial + tail);
}

CapacityResult lattice_max_density(const NetworkParams& params, double b) {
  params.validate();
  const double beta = threshold_from_rate(b);
  const auto feasible = [&](double spacing) {
    return lattice_sir(params, make_layout(params, spacing)) >= beta;
  };

  // Below d (1 + beta^(1/alpha)) even the nearest interferer alone pushes
  // the SIR under beta, so this is a sound infeasible floor.
  double lo = params.d * (1.0 + std::pow(beta, 1.0 / params.alpha));
  double hi = 2.0 * lo;
  int doublings = 0;
  while (!feasible(hi)) {
    if (++doublings > 64) {
      throw ConvergenceError("not bracketed: no feasible spacing found while doubling");
    }
    hi *= 2.0;
  }

  for (int iter = 0; iter < 200 && (hi - lo) > 1e-9 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // hi stayed feasible throughout, so 1/hi^2 is an achievable density.
  return {1.0 / (hi * hi), CapacityKind::LatticeLower, 0.0};
}

}  // namespace spectrum_split
