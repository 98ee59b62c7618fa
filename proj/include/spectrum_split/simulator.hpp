#pragma once

#include <cstdint>
#include <vector>

#include "spectrum_split/analytic.hpp"
#include "spectrum_split/errors.hpp"
#include "spectrum_split/params.hpp"

namespace spectrum_split {

enum class FadingModel { PathLossOnly, Rayleigh };

// One outage estimate spends `trials` independent Poisson snapshots, each on
// a disk of radius window_radius around the reference receiver.
struct SimConfig {
  std::uint64_t trials = 200000;
  double window_radius = 0.0;  // meters; must be > 0 at use (see default_window_radius)
  std::uint64_t master_seed = 1;
  double bisect_tol_abs = 0.002;  // |pOut - eps| stopping band, in (0, 0.5)
  int bisect_max_iter = 60;
  int max_bracket_doublings = 40;
};

// max(50 d beta^(1/alpha), 40 d): far enough out that interference from
// beyond the window cannot move the outage estimate by a visible amount.
double default_window_radius(const NetworkParams& params, double beta);

// max(0.002, 2 sqrt(eps (1-eps) / trials)): never bisect below the noise floor.
double default_bisect_tol(std::uint64_t trials, double epsilon);

void validate_config(const SimConfig& cfg);

// Caps worker threads for outage estimation; reads SPECTRUM_SPLIT_THREADS
// (unset, empty, or 0 = one thread per hardware core). Results never depend
// on this value.
int resolve_thread_count();

// Substream tags; fixed so that a trial's geometry is shared across fading
// models and intensities.
enum class StreamPurpose : std::uint64_t {
  InterfererCount = 1,
  Geometry = 2,
  Fading = 3,
  ThinningMark = 4,
  SignalFading = 5,
};

struct SnapshotResult {
  double sinr = 0.0;
  double interference = 0.0;  // aggregate received interference power (W)
  std::uint64_t n_interferers = 0;
};

// One sampled interferer: distance from the reference receiver, power fading
// gain (1 under pure path loss), and an independent uniform mark supporting
// superposition thinning.
struct Interferer {
  double distance = 0.0;
  double gain = 1.0;
  double mark = 0.0;
};

// Draws the interferer field of one trial: K ~ Poisson(intensity pi R^2)
// points placed uniformly on the disk. Deterministic in (master_seed, trial).
std::vector<Interferer> sample_field(const NetworkParams& params, double intensity,
                                     FadingModel fading, const SimConfig& cfg,
                                     std::uint64_t trial);

// SINR of the reference link in one trial against a field of the given
// per-band intensity. n_bands sets the sub-band noise power (w/n) n0; the
// reference signal is rho d^-alpha times the signal fading gain. Zero noise
// and zero interference yield SINR = +infinity.
SnapshotResult sample_snapshot(const NetworkParams& params, double per_band_intensity,
                               FadingModel fading, const SimConfig& cfg,
                               std::uint64_t trial, int n_bands);

struct OutageEstimate {
  double p_out = 0.0;
  double std_error = 0.0;  // binomial 1-sigma
};

// Fraction of trials with SINR < plan.beta when total_intensity is spread
// uniformly over plan.n sub-bands (per-band intensity total/n).
OutageEstimate estimate_outage(const NetworkParams& params, const BandPlan& plan,
                               double total_intensity, FadingModel fading,
                               const SimConfig& cfg);

// Largest total intensity whose estimated outage meets epsilon: bisection on
// [0, hi] where hi starts at 4x the closed-form approximation and doubles
// until outage exceeds epsilon. Throws ConvergenceError("not bracketed")
// if the bracket cap is hit and ConvergenceError("max iterations") if the
// tolerance band is never entered. The reported std_error propagates the
// binomial error through a finite-difference slope at the solution.
CapacityResult solve_capacity(const NetworkParams& params, int n, double epsilon,
                              FadingModel fading, const SimConfig& cfg);

}  // namespace spectrum_split
