#include "spectrum_split/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <thread>

#include "spectrum_split/rng.hpp"

namespace spectrum_split {

namespace {

constexpr std::uint64_t tag(StreamPurpose p) { return static_cast<std::uint64_t>(p); }

// Aggregate interference power of one trial without materializing the field.
// Must draw exactly like sample_field: same streams, same per-point order.
double trial_interference(const NetworkParams& params, double intensity,
                          FadingModel fading, const SimConfig& cfg, std::uint64_t trial,
                          std::uint64_t* n_interferers) {
  const double radius = cfg.window_radius;
  CounterRng count_rng(cfg.master_seed, trial, tag(StreamPurpose::InterfererCount));
  const double mean = intensity * std::numbers::pi * radius * radius;
  const std::uint64_t k = count_rng.next_poisson(mean);
  CounterRng geo(cfg.master_seed, trial, tag(StreamPurpose::Geometry));
  CounterRng fad(cfg.master_seed, trial, tag(StreamPurpose::Fading));
  const bool rayleigh = fading == FadingModel::Rayleigh;
  const bool quartic = params.alpha == 4.0;
  const double r2 = radius * radius;
  const double half_neg_alpha = -0.5 * params.alpha;
  double sum = 0.0;
  for (std::uint64_t i = 0; i < k; ++i) {
    double u = geo.next_unit();
    while (u == 0.0) u = geo.next_unit();  // colocated interferer; degenerate
    const double sq = r2 * u;  // squared distance; the radius itself is not needed
    const double loss = quartic ? 1.0 / (sq * sq) : std::pow(sq, half_neg_alpha);
    const double gain = rayleigh ? fad.next_exp() : 1.0;
    sum += gain * loss;
  }
  if (n_interferers) *n_interferers = k;
  return params.rho * sum;
}

}  // namespace

double default_window_radius(const NetworkParams& params, double beta) {
  params.validate();
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be > 0 and finite");
  }
  return std::max(50.0 * params.d * std::pow(beta, 1.0 / params.alpha), 40.0 * params.d);
}

double default_bisect_tol(std::uint64_t trials, double epsilon) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  return std::max(0.002, 2.0 * std::sqrt(epsilon * (1.0 - epsilon) /
                                         static_cast<double>(trials)));
}

void validate_config(const SimConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(cfg.window_radius > 0.0) || !std::isfinite(cfg.window_radius)) {
    throw std::invalid_argument("window radius must be > 0");
  }
  if (!(cfg.bisect_tol_abs > 0.0 && cfg.bisect_tol_abs < 0.5)) {
    throw std::invalid_argument("bisection tolerance must lie in (0, 0.5)");
  }
  if (cfg.bisect_max_iter < 1) throw std::invalid_argument("bisect_max_iter must be >= 1");
  if (cfg.max_bracket_doublings < 0) {
    throw std::invalid_argument("max_bracket_doublings must be >= 0");
  }
}

int resolve_thread_count() {
  long v = 0;
  if (const char* env = std::getenv("SPECTRUM_SPLIT_THREADS"); env && *env) {
    char* end = nullptr;
    v = std::strtol(env, &end, 10);
    if (end == env || v < 0) v = 0;
  }
  if (v == 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    v = hc > 0 ? static_cast<long>(hc) : 1;
  }
  return static_cast<int>(std::min<long>(v, 256));
}

std::vector<Interferer> sample_field(const NetworkParams& params, double intensity,
                                     FadingModel fading, const SimConfig& cfg,
                                     std::uint64_t trial) {
  params.validate();
  validate_config(cfg);
  if (!(intensity >= 0.0) || !std::isfinite(intensity)) {
    throw std::invalid_argument("intensity must be >= 0");
  }
  const double radius = cfg.window_radius;
  CounterRng count_rng(cfg.master_seed, trial, tag(StreamPurpose::InterfererCount));
  const std::uint64_t k =
      count_rng.next_poisson(intensity * std::numbers::pi * radius * radius);
  CounterRng geo(cfg.master_seed, trial, tag(StreamPurpose::Geometry));
  CounterRng fad(cfg.master_seed, trial, tag(StreamPurpose::Fading));
  CounterRng mark(cfg.master_seed, trial, tag(StreamPurpose::ThinningMark));
  const bool rayleigh = fading == FadingModel::Rayleigh;
  std::vector<Interferer> field(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    double u = geo.next_unit();
    while (u == 0.0) u = geo.next_unit();
    field[i].distance = radius * std::sqrt(u);
    field[i].gain = rayleigh ? fad.next_exp() : 1.0;
    field[i].mark = mark.next_unit();
  }
  return field;
}

SnapshotResult sample_snapshot(const NetworkParams& params, double per_band_intensity,
                               FadingModel fading, const SimConfig& cfg,
                               std::uint64_t trial, int n_bands) {
  params.validate();
  validate_config(cfg);
  if (n_bands < 1) throw std::invalid_argument("band count must be >= 1");
  if (!(per_band_intensity >= 0.0) || !std::isfinite(per_band_intensity)) {
    throw std::invalid_argument("intensity must be >= 0");
  }
  std::uint64_t k = 0;
  const double interference =
      trial_interference(params, per_band_intensity, fading, cfg, trial, &k);
  const double h0 =
      fading == FadingModel::Rayleigh
          ? CounterRng(cfg.master_seed, trial, tag(StreamPurpose::SignalFading)).next_exp()
          : 1.0;
  const double eta =
      params.interference_limited() ? 0.0 : (params.w / n_bands) * params.n0;
  const double denom = eta + interference;
  const double sinr = denom > 0.0
                          ? params.rho * std::pow(params.d, -params.alpha) * h0 / denom
                          : std::numeric_limits<double>::infinity();
  return {sinr, interference, k};
}

OutageEstimate estimate_outage(const NetworkParams& params, const BandPlan& plan,
                               double total_intensity, FadingModel fading,
                               const SimConfig& cfg) {
  params.validate();
  validate_config(cfg);
  if (plan.n < 1 || !(plan.beta > 0.0)) {
    throw std::invalid_argument("band plan must have n >= 1 and beta > 0");
  }
  if (!(total_intensity >= 0.0) || !std::isfinite(total_intensity)) {
    throw std::invalid_argument("intensity must be >= 0");
  }
  const double per_band = total_intensity / plan.n;
  const std::uint64_t trials = cfg.trials;

  auto count_outages = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t outages = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      const SnapshotResult snap =
          sample_snapshot(params, per_band, fading, cfg, t, plan.n);
      if (snap.sinr < plan.beta) ++outages;
    }
    return outages;
  };

  const int n_threads =
      static_cast<int>(std::min<std::uint64_t>(resolve_thread_count(), trials));
  std::uint64_t total_outages = 0;
  if (n_threads <= 1) {
    total_outages = count_outages(0, trials);
  } else {
    // Trials are keyed by index, so the chunking below cannot change any
    // draw; partial counts are integers and sum identically in any order.
    std::vector<std::uint64_t> partial(n_threads, 0);
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    const std::uint64_t chunk = (trials + n_threads - 1) / n_threads;
    for (int i = 0; i < n_threads; ++i) {
      const std::uint64_t begin = std::min<std::uint64_t>(i * chunk, trials);
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, trials);
      workers.emplace_back(
          [&, begin, end, i] { partial[i] = count_outages(begin, end); });
    }
    for (auto& th : workers) th.join();
    for (const std::uint64_t c : partial) total_outages += c;
  }

  const double p = static_cast<double>(total_outages) / static_cast<double>(trials);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return {p, se};
}

CapacityResult solve_capacity(const NetworkParams& params, int n, double epsilon,
                              FadingModel fading, const SimConfig& cfg) {
  params.validate();
  validate_config(cfg);
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  const BandPlan plan = sinr_threshold(params, n);
  auto outage_at = [&](double intensity) {
    return estimate_outage(params, plan, intensity, fading, cfg);
  };

  // Interference-free outage already above budget: no positive intensity can
  // meet the constraint.
  if (outage_at(0.0).p_out > epsilon) {
    return {0.0, CapacityKind::MonteCarlo, 0.0};
  }

  double hint;
  try {
    hint = capacity_approx(params, plan, epsilon).lambda;
  } catch (const std::domain_error&) {
    // Noise-infeasible closed form; fading can still admit a positive
    // capacity, so bracket from the interference-limited value instead.
    hint = capacity_interference_limited(params, plan, epsilon).lambda;
  }

  double hi = 4.0 * hint;
  OutageEstimate at_hi = outage_at(hi);
  for (int doublings = 0; at_hi.p_out <= epsilon; ++doublings) {
    if (doublings >= cfg.max_bracket_doublings) {
      throw ConvergenceError("not bracketed: outage stayed at or below epsilon up to the bracket cap");
    }
    hi *= 2.0;
    at_hi = outage_at(hi);
  }

  double lo = 0.0;
  double solution = -1.0;
  double se_at_solution = 0.0;
  for (int iter = 0; iter < cfg.bisect_max_iter; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const OutageEstimate est = outage_at(mid);
    if (std::fabs(est.p_out - epsilon) <= cfg.bisect_tol_abs) {
      solution = mid;
      se_at_solution = est.std_error;
      break;
    }
    if (est.p_out > epsilon) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (solution < 0.0) {
    throw ConvergenceError("max iterations: bisection never entered the tolerance band");
  }

  // Binomial error pushed through the local slope d pOut / d lambda.
  const double delta = 0.05;
  const double p_up = outage_at(solution * (1.0 + delta)).p_out;
  const double p_dn = outage_at(solution * (1.0 - delta)).p_out;
  const double slope = (p_up - p_dn) / (2.0 * delta * solution);
  const double se = slope > 0.0 ? se_at_solution / slope : solution;
  return {solution, CapacityKind::MonteCarlo, se};
}

}  // namespace spectrum_split
