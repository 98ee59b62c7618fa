#include "spectrum_split/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spectrum_split/lambert.hpp"

namespace spectrum_split {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
}

void check_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

// Shared body of the split-band density formulas; use_noise selects whether
// the 1/(n snr) term participates. Verbatim shared so the interference-limited
// path is bit-identical to capacity_approx under the interference-limited flag.
CapacityResult capacity_core(const NetworkParams& params, const BandPlan& plan,
                             double epsilon, bool use_noise) {
  params.validate();
  check_epsilon(epsilon);
  if (plan.n < 1 || !(plan.beta > 0.0)) {
    throw std::invalid_argument("band plan must have n >= 1 and beta > 0");
  }
  const bool noisy = use_noise && !params.interference_limited();
  const double noise_term = noisy ? 1.0 / (plan.n * params.snr()) : 0.0;
  const double inner = 1.0 / plan.beta - noise_term;
  if (!(inner > 0.0)) {
    throw std::domain_error(
        "noise-infeasible: per-band SNR cannot support the SINR threshold");
  }
  // Grouped as n * eps * (per-transmitter factor) so the n=1 value is
  // bit-identical to epsilon times the clear-disk density bound.
  const double lambda =
      plan.n * epsilon *
      (std::pow(inner, 2.0 / params.alpha) /
       (std::numbers::pi * params.d * params.d));
  return {lambda,
          noisy ? CapacityKind::AnalyticApprox : CapacityKind::AnalyticInterferenceLimited,
          0.0};
}

}  // namespace

double NetworkParams::snr() const {
  if (interference_limited()) {
    throw std::logic_error("snr() undefined in the interference-limited regime");
  }
  return rho * std::pow(d, -alpha) / (n0 * w);
}

void NetworkParams::validate() const {
  check_finite(alpha, "alpha");
  check_finite(d, "d");
  check_finite(rho, "rho");
  check_finite(n0, "n0");
  check_finite(w, "w");
  check_finite(r, "r");
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
  if (!(d > 0.0)) throw std::invalid_argument("d must be > 0");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be > 0");
  if (!(n0 >= 0.0)) throw std::invalid_argument("n0 must be >= 0");
  if (!(w > 0.0)) throw std::invalid_argument("w must be > 0");
  if (!(r > 0.0)) throw std::invalid_argument("r must be > 0");
}

NetworkParams NetworkParams::from_utilization(double alpha, double d, double util,
                                              std::optional<double> snr_linear) {
  if (!(util > 0.0) || !std::isfinite(util)) {
    throw std::invalid_argument("utilization must be > 0");
  }
  NetworkParams p;
  p.alpha = alpha;
  p.d = d;
  p.rho = 1.0;
  p.w = 1.0;
  p.r = util;
  if (snr_linear) {
    if (!(*snr_linear > 0.0) || !std::isfinite(*snr_linear)) {
      throw std::invalid_argument("snr must be > 0 and finite");
    }
    p.n0 = p.rho * std::pow(d, -alpha) / (*snr_linear * p.w);
  } else {
    p.n0 = 0.0;
  }
  p.validate();
  return p;
}

std::string to_string(CapacityKind kind) {
  switch (kind) {
    case CapacityKind::AnalyticApprox: return "analytic-approx";
    case CapacityKind::AnalyticInterferenceLimited: return "analytic-interference-limited";
    case CapacityKind::MonteCarlo: return "monte-carlo";
    case CapacityKind::DsAnalytic: return "ds-analytic";
    case CapacityKind::DeterministicUpper: return "deterministic-upper";
    case CapacityKind::LatticeLower: return "lattice-lower";
  }
  return "unknown";
}

BandPlan sinr_threshold(const NetworkParams& params, int n) {
  params.validate();
  if (n < 1) throw std::invalid_argument("band count must be >= 1");
  const double b = n * params.utilization();
  const double beta = std::exp2(b) - 1.0;
  if (!std::isfinite(beta)) {
    throw std::overflow_error("threshold overflow: 2^(n r/w) is not representable");
  }
  return {n, b, beta};
}

BandPlan gap_adjusted_threshold(const NetworkParams& params, int n, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("coding gap gamma must lie in (0, 1]");
  }
  BandPlan plan = sinr_threshold(params, n);
  plan.beta /= gamma;
  if (!std::isfinite(plan.beta)) {
    throw std::overflow_error("threshold overflow: gap-adjusted threshold overflows");
  }
  return plan;
}

CapacityResult capacity_approx(const NetworkParams& params, const BandPlan& plan,
                               double epsilon) {
  return capacity_core(params, plan, epsilon, true);
}

CapacityResult capacity_approx(const NetworkParams& params, int n, double epsilon) {
  return capacity_approx(params, sinr_threshold(params, n), epsilon);
}

CapacityResult capacity_interference_limited(const NetworkParams& params,
                                             const BandPlan& plan, double epsilon) {
  return capacity_core(params, plan, epsilon, false);
}

CapacityResult capacity_interference_limited(const NetworkParams& params, int n,
                                             double epsilon) {
  return capacity_interference_limited(params, sinr_threshold(params, n), epsilon);
}

CapacityResult ds_capacity(const NetworkParams& params, const BandPlan& plan,
                           double epsilon) {
  params.validate();
  check_epsilon(epsilon);
  if (plan.n < 1 || !(plan.beta > 0.0)) {
    throw std::invalid_argument("band plan must have n >= 1 and beta > 0");
  }
  // (n / beta)^(2/alpha), grouped like the split-band formula so the n=1
  // values of the two systems coincide bit for bit.
  const double lambda =
      epsilon * (std::pow(plan.n / plan.beta, 2.0 / params.alpha) /
                 (std::numbers::pi * params.d * params.d));
  return {lambda, CapacityKind::DsAnalytic, 0.0};
}

CapacityResult ds_capacity(const NetworkParams& params, int n, double epsilon) {
  return ds_capacity(params, sinr_threshold(params, n), epsilon);
}

double optimal_spectral_efficiency(double alpha) {
  if (!std::isfinite(alpha) || !(alpha > 2.0)) {
    throw std::invalid_argument("alpha must be > 2");
  }
  static const double inv_e = std::exp(-1.0);
  const double a2 = 0.5 * alpha;
  double arg = -a2 * std::exp(-a2);
  // In exact arithmetic arg >= -1/e for every alpha; rounding can nudge it
  // just past the branch point when alpha is close to 2.
  if (arg < -inv_e) arg = -inv_e;
  const double w = lambert_w0(arg);
  return (a2 + w) / std::numbers::ln2;
}

double capacity_objective(double b, double alpha) {
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("b must be > 0");
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
  const double beta = std::exp2(b) - 1.0;
  if (!std::isfinite(beta)) {
    throw std::overflow_error("threshold overflow: 2^b is not representable");
  }
  return b * std::pow(beta, -2.0 / alpha);
}

double density_constant(double alpha) {
  return capacity_objective(optimal_spectral_efficiency(alpha), alpha);
}

BandCountResult optimal_band_count(const NetworkParams& params) {
  params.validate();
  const double util = params.utilization();
  const double b_star = optimal_spectral_efficiency(params.alpha);
  const double n_real = b_star / util;
  if (n_real >= static_cast<double>(std::numeric_limits<int>::max() / 2)) {
    throw std::overflow_error("optimal band count exceeds the supported range");
  }
  if (n_real <= 1.0) return {1, n_real};
  const int n_lo = static_cast<int>(std::floor(n_real));
  const int n_hi = static_cast<int>(std::ceil(n_real));
  if (n_lo == n_hi) return {n_lo, n_real};
  const double v_lo = n_lo * std::pow(std::exp2(n_lo * util) - 1.0, -2.0 / params.alpha);
  const double v_hi = n_hi * std::pow(std::exp2(n_hi * util) - 1.0, -2.0 / params.alpha);
  const double scale = v_lo > v_hi ? v_lo : v_hi;
  if (std::fabs(v_lo - v_hi) <= 1e-12 * scale) return {n_lo, n_real};
  return {v_lo >= v_hi ? n_lo : n_hi, n_real};
}

CapacityResult info_density(const NetworkParams& params, double epsilon) {
  const double ase = area_spectral_efficiency(params, epsilon);
  return {ase / params.utilization(), CapacityKind::AnalyticInterferenceLimited, 0.0};
}

double area_spectral_efficiency(const NetworkParams& params, double epsilon) {
  params.validate();
  check_epsilon(epsilon);
  return (epsilon / (std::numbers::pi * params.d * params.d)) *
         density_constant(params.alpha);
}

}  // namespace spectrum_split
