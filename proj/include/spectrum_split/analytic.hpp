#pragma once

#include <string>

#include "spectrum_split/params.hpp"

namespace spectrum_split {

// Operating point of one sub-band when the system band is split n ways.
// Decoding at rate r over bandwidth w/n needs SINR >= beta = 2^b - 1,
// where b = n r / w is the per-band spectral efficiency.
struct BandPlan {
  int n = 1;         // number of sub-bands, >= 1
  double b = 0.0;    // per-band spectral efficiency (bit/s/Hz)
  double beta = 0.0; // SINR threshold (linear)
};

enum class CapacityKind {
  AnalyticApprox,
  AnalyticInterferenceLimited,
  MonteCarlo,
  DsAnalytic,
  DeterministicUpper,
  LatticeLower,
};

std::string to_string(CapacityKind kind);

struct CapacityResult {
  double lambda = 0.0;   // max density of concurrent pairs (1/m^2)
  CapacityKind kind = CapacityKind::AnalyticApprox;
  double std_error = 0.0;  // 1-sigma error; 0 for closed forms
};

struct BandCountResult {
  int n_star = 1;     // best integer number of sub-bands
  double n_real = 0;  // unrounded optimum b*(alpha) / (r/w)
};

// beta = 2^(n r / w) - 1. Throws std::overflow_error when the threshold is
// not representable, std::invalid_argument for n < 1 or bad params.
BandPlan sinr_threshold(const NetworkParams& params, int n);

// Same threshold divided by a coding gap gamma in (0, 1]; gamma = 1 is
// capacity-achieving coding and reproduces sinr_threshold exactly.
BandPlan gap_adjusted_threshold(const NetworkParams& params, int n, double gamma);

// Low-outage density approximation at outage budget epsilon:
//   lambda = n (eps / (pi d^2)) (1/beta - 1/(n snr))^(2/alpha)
// The noise term vanishes in the interference-limited regime. Throws
// std::domain_error ("noise-infeasible") when 1/beta <= 1/(n snr).
CapacityResult capacity_approx(const NetworkParams& params, const BandPlan& plan,
                               double epsilon);
CapacityResult capacity_approx(const NetworkParams& params, int n, double epsilon);

// The same expression with the noise term forced to zero. Bit-identical to
// capacity_approx whenever params.interference_limited().
CapacityResult capacity_interference_limited(const NetworkParams& params,
                                             const BandPlan& plan, double epsilon);
CapacityResult capacity_interference_limited(const NetworkParams& params, int n,
                                             double epsilon);

// Direct-sequence spreading over the full band:
//   lambda = (eps / (pi d^2)) n^(2/alpha) beta^(-2/alpha)
// Never exceeds the split-band capacity; equal exactly at n = 1.
CapacityResult ds_capacity(const NetworkParams& params, const BandPlan& plan,
                           double epsilon);
CapacityResult ds_capacity(const NetworkParams& params, int n, double epsilon);

// Unconstrained optimal per-band spectral efficiency
//   b* = log2(e) [alpha/2 + W0(-(alpha/2) e^(-alpha/2))]
// equivalently the root of b ln 2 = (alpha/2)(1 - 2^-b). Requires alpha > 2.
double optimal_spectral_efficiency(double alpha);

// Density objective b (2^b - 1)^(-2/alpha) for b > 0; unimodal with its
// maximum at b* = optimal_spectral_efficiency(alpha).
double capacity_objective(double b, double alpha);

// capacity_objective evaluated at b*(alpha).
double density_constant(double alpha);

// Best integer band count for the rate demand in params: the better of
// floor/ceil of n_real = b*/(r/w) under the interference-limited density,
// clamped to >= 1. Ties within 1e-12 relative resolve to the smaller n.
BandCountResult optimal_band_count(const NetworkParams& params);

// Density of pairs at the unconstrained optimum operating point:
//   lambda* = (eps / (pi d^2)) (1/(r/w)) b* (2^b* - 1)^(-2/alpha)
CapacityResult info_density(const NetworkParams& params, double epsilon);

// lambda* scaled by the utilization: (eps / (pi d^2)) b* (2^b* - 1)^(-2/alpha)
// in bit/s/Hz/m^2. Independent of r and w.
double area_spectral_efficiency(const NetworkParams& params, double epsilon);

}  // namespace spectrum_split
