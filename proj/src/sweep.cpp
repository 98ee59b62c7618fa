#include "spectrum_split/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>

#include "spectrum_split/lattice.hpp"

namespace spectrum_split {

namespace {

void check_grid(const SweepSpec& spec, bool needs_alpha_grid) {
  if (needs_alpha_grid) {
    if (spec.alpha_grid.empty()) throw std::invalid_argument("alpha grid is empty");
    return;
  }
  if (spec.n_min < 1 || spec.n_max > 256 || spec.n_min > spec.n_max) {
    throw std::invalid_argument("band range must satisfy 1 <= n_min <= n_max <= 256");
  }
  if (spec.utils.empty()) throw std::invalid_argument("utilization grid is empty");
  for (const double u : spec.utils) {
    if (!(u > 0.0) || !std::isfinite(u)) {
      throw std::invalid_argument("every utilization must be > 0 and finite");
    }
  }
}

SimConfig cell_config(const SweepSpec& spec, const NetworkParams& params, double beta) {
  SimConfig cfg = spec.sim;
  if (cfg.window_radius == 0.0) {
    cfg.window_radius = default_window_radius(params, beta);
  }
  return cfg;
}

}  // namespace

std::string to_string(Figure figure) {
  switch (figure) {
    case Figure::Fig1: return "fig1";
    case Figure::Fig2: return "fig2";
    case Figure::DsCompare: return "ds-compare";
    case Figure::BoundsCompare: return "bounds-compare";
  }
  throw std::logic_error("unknown figure");
}

Figure figure_from_string(const std::string& name) {
  if (name == "fig1") return Figure::Fig1;
  if (name == "fig2") return Figure::Fig2;
  if (name == "ds-compare") return Figure::DsCompare;
  if (name == "bounds-compare") return Figure::BoundsCompare;
  throw std::invalid_argument("unknown figure: " + name);
}

Table run_fig1(const std::vector<double>& alpha_grid) {
  if (alpha_grid.empty()) throw std::invalid_argument("alpha grid is empty");
  Table table;
  table.columns = {"alpha", "b_star", "density_constant"};
  table.rows.reserve(alpha_grid.size());
  for (const double alpha : alpha_grid) {
    table.rows.push_back(
        {alpha, optimal_spectral_efficiency(alpha), density_constant(alpha)});
  }
  return table;
}

Table run_fig2(const SweepSpec& spec) {
  check_grid(spec, false);
  const double snr_linear = std::pow(10.0, spec.snr_db / 10.0);
  Table table;
  table.columns = {"n",           "util",          "analytic_lambda",
                   "mc_inf_lambda", "mc_inf_stderr", "mc_20db_lambda",
                   "mc_20db_stderr"};
  for (const double util : spec.utils) {
    const NetworkParams inf_params =
        NetworkParams::from_utilization(spec.alpha, spec.d, util, std::nullopt);
    const NetworkParams snr_params =
        NetworkParams::from_utilization(spec.alpha, spec.d, util, snr_linear);
    for (int n = spec.n_min; n <= spec.n_max; ++n) {
      const BandPlan plan = sinr_threshold(inf_params, n);
      const double analytic =
          capacity_interference_limited(inf_params, plan, spec.epsilon).lambda;
      const SimConfig cfg = cell_config(spec, inf_params, plan.beta);
      const CapacityResult mc_inf =
          solve_capacity(inf_params, n, spec.epsilon, FadingModel::PathLossOnly, cfg);
      const CapacityResult mc_snr =
          solve_capacity(snr_params, n, spec.epsilon, FadingModel::PathLossOnly, cfg);
      table.rows.push_back({static_cast<double>(n), util, analytic, mc_inf.lambda,
                            mc_inf.std_error, mc_snr.lambda, mc_snr.std_error});
    }
  }
  return table;
}

Table run_ds_compare(const SweepSpec& spec) {
  check_grid(spec, false);
  Table table;
  table.columns = {"n", "util", "fh_lambda", "ds_lambda", "fh_over_ds"};
  for (const double util : spec.utils) {
    const NetworkParams params =
        NetworkParams::from_utilization(spec.alpha, spec.d, util, std::nullopt);
    for (int n = spec.n_min; n <= spec.n_max; ++n) {
      const BandPlan plan = sinr_threshold(params, n);
      const double fh = capacity_interference_limited(params, plan, spec.epsilon).lambda;
      const double ds = ds_capacity(params, plan, spec.epsilon).lambda;
      table.rows.push_back({static_cast<double>(n), util, fh, ds, fh / ds});
    }
  }
  return table;
}

Table run_bounds_compare(const SweepSpec& spec) {
  check_grid(spec, true);
  Table table;
  table.columns = {"alpha",         "b_star",        "det_upper",
                   "lattice_lower", "upper_over_lower", "random_lambda",
                   "random_over_upper"};
  for (const double alpha : spec.alpha_grid) {
    NetworkParams params;
    params.alpha = alpha;
    params.d = spec.d;
    const double b = optimal_spectral_efficiency(alpha);
    const BandPlan plan{1, b, std::exp2(b) - 1.0};
    const double upper = det_upper_bound(params, b).lambda;
    const double lower = lattice_max_density(params, b).lambda;
    const double random =
        capacity_interference_limited(params, plan, spec.epsilon).lambda;
    table.rows.push_back(
        {alpha, b, upper, lower, upper / lower, random, random / upper});
  }
  return table;
}

Table run_sweep(const SweepSpec& spec) {
  switch (spec.figure) {
    case Figure::Fig1: return run_fig1(spec.alpha_grid);
    case Figure::Fig2: return run_fig2(spec);
    case Figure::DsCompare: return run_ds_compare(spec);
    case Figure::BoundsCompare: return run_bounds_compare(spec);
  }
  throw std::logic_error("unknown figure");
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_csv(const Table& table, const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << to_csv(table);
  file.flush();
  if (!file) throw std::runtime_error("failed writing output file: " + path);
}

nlohmann::ordered_json sidecar_json(const SweepSpec& spec) {
  nlohmann::ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["figure"] = to_string(spec.figure);
  doc["alpha_grid"] = spec.alpha_grid;
  doc["n_min"] = spec.n_min;
  doc["n_max"] = spec.n_max;
  doc["utils"] = spec.utils;
  doc["alpha"] = spec.alpha;
  doc["d"] = spec.d;
  doc["epsilon"] = spec.epsilon;
  // JSON has no infinity literal; an unbounded SNR round-trips as a string.
  if (std::isfinite(spec.snr_db)) {
    doc["snr_db"] = spec.snr_db;
  } else {
    doc["snr_db"] = spec.snr_db > 0 ? "inf" : "-inf";
  }
  doc["sim"] = {{"trials", spec.sim.trials},
                {"window_radius", spec.sim.window_radius},
                {"master_seed", spec.sim.master_seed},
                {"bisect_tol_abs", spec.sim.bisect_tol_abs},
                {"bisect_max_iter", spec.sim.bisect_max_iter},
                {"max_bracket_doublings", spec.sim.max_bracket_doublings}};
  doc["output_path"] = spec.output_path;
  return doc;
}

SweepSpec spec_from_sidecar(const nlohmann::json& doc) {
  try {
    SweepSpec spec;
    spec.figure = figure_from_string(doc.at("figure").get<std::string>());
    spec.alpha_grid = doc.at("alpha_grid").get<std::vector<double>>();
    spec.n_min = doc.at("n_min").get<int>();
    spec.n_max = doc.at("n_max").get<int>();
    spec.utils = doc.at("utils").get<std::vector<double>>();
    spec.alpha = doc.at("alpha").get<double>();
    spec.d = doc.at("d").get<double>();
    spec.epsilon = doc.at("epsilon").get<double>();
    const auto& snr = doc.at("snr_db");
    if (snr.is_string()) {
      const std::string s = snr.get<std::string>();
      if (s == "inf") {
        spec.snr_db = std::numeric_limits<double>::infinity();
      } else if (s == "-inf") {
        spec.snr_db = -std::numeric_limits<double>::infinity();
      } else {
        throw std::invalid_argument("snr_db string must be \"inf\" or \"-inf\"");
      }
    } else {
      spec.snr_db = snr.get<double>();
    }
    const auto& sim = doc.at("sim");
    spec.sim.trials = sim.at("trials").get<std::uint64_t>();
    spec.sim.window_radius = sim.at("window_radius").get<double>();
    spec.sim.master_seed = sim.at("master_seed").get<std::uint64_t>();
    spec.sim.bisect_tol_abs = sim.at("bisect_tol_abs").get<double>();
    spec.sim.bisect_max_iter = sim.at("bisect_max_iter").get<int>();
    spec.sim.max_bracket_doublings = sim.at("max_bracket_doublings").get<int>();
    spec.output_path = doc.at("output_path").get<std::string>();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad sweep sidecar: ") + e.what());
  }
}

void run_and_write(const SweepSpec& spec) {
  if (spec.output_path.empty()) {
    throw std::invalid_argument("output path is empty");
  }
  const Table table = run_sweep(spec);
  write_csv(table, spec.output_path);
  std::ofstream side(spec.output_path + ".json", std::ios::binary);
  if (!side) {
    throw std::runtime_error("cannot open sidecar file: " + spec.output_path + ".json");
  }
  side << sidecar_json(spec).dump(2) << '\n';
  side.flush();
  if (!side) {
    throw std::runtime_error("failed writing sidecar file: " + spec.output_path + ".json");
  }
}

}  // namespace spectrum_split
