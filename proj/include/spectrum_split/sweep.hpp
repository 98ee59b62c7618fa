#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "spectrum_split/simulator.hpp"

namespace spectrum_split {

inline constexpr const char* kToolName = "spectrum-split";
inline constexpr const char* kToolVersion = "0.1.0";

enum class Figure { Fig1, Fig2, DsCompare, BoundsCompare };

std::string to_string(Figure figure);
Figure figure_from_string(const std::string& name);

// Grid description for one experiment run. Only the fields a figure consumes
// are read: Fig1 and BoundsCompare walk alpha_grid; Fig2 and DsCompare walk
// n in [n_min, n_max] for each utilization. sim.window_radius == 0 requests
// the per-cell default radius.
struct SweepSpec {
  Figure figure = Figure::Fig2;
  std::vector<double> alpha_grid = {2.1, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0};
  int n_min = 1;
  int n_max = 20;
  std::vector<double> utils = {0.25, 0.5};
  double alpha = 4.0;
  double d = 10.0;
  double epsilon = 0.1;
  double snr_db = 20.0;  // finite-SNR Monte-Carlo column of Fig2
  SimConfig sim;
  std::string output_path;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// b* and the density constant per path-loss exponent.
// Columns: alpha,b_star,density_constant
Table run_fig1(const std::vector<double>& alpha_grid);

// Closed-form versus Monte-Carlo split-band capacity per band count, at
// infinite SNR and at spec.snr_db, pure path loss.
// Columns: n,util,analytic_lambda,mc_inf_lambda,mc_inf_stderr,mc_20db_lambda,mc_20db_stderr
Table run_fig2(const SweepSpec& spec);

// Split-band versus direct-sequence closed forms per band count.
// Columns: n,util,fh_lambda,ds_lambda,fh_over_ds
Table run_ds_compare(const SweepSpec& spec);

// Bound chain at b = b*(alpha) per path-loss exponent.
// Columns: alpha,b_star,det_upper,lattice_lower,upper_over_lower,random_lambda,random_over_upper
Table run_bounds_compare(const SweepSpec& spec);

// Dispatch on spec.figure.
Table run_sweep(const SweepSpec& spec);

// Full-precision deterministic CSV: header line plus one row per grid point.
std::string to_csv(const Table& table);
void write_csv(const Table& table, const std::string& path);

// Sidecar carrying the complete spec, tool version, and seed; feeding it back
// through spec_from_sidecar reproduces the run byte for byte.
nlohmann::ordered_json sidecar_json(const SweepSpec& spec);
SweepSpec spec_from_sidecar(const nlohmann::json& doc);

// Writes the table to spec.output_path and the sidecar next to it
// (output_path + ".json").
void run_and_write(const SweepSpec& spec);

}  // namespace spectrum_split
