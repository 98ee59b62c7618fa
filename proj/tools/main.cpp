#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spectrum_split/analytic.hpp"
#include "spectrum_split/errors.hpp"
#include "spectrum_split/lattice.hpp"
#include "spectrum_split/simulator.hpp"
#include "spectrum_split/sweep.hpp"

namespace ss = spectrum_split;
using nlohmann::ordered_json;

namespace {

enum class OutputMode { Human, Json, Csv };

OutputMode parse_output_mode(const std::string& text) {
  if (text == "human") return OutputMode::Human;
  if (text == "json") return OutputMode::Json;
  return OutputMode::Csv;
}

double parse_snr_db(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != text.size()) {
    throw std::invalid_argument("snr-db must be a number or the literal 'inf'");
  }
  return value;
}

ss::FadingModel parse_fading(const std::string& text) {
  return text == "rayleigh" ? ss::FadingModel::Rayleigh : ss::FadingModel::PathLossOnly;
}

// Network parameters normalized to rho = 1, w = 1, r = util; an unbounded
// SNR means no noise term at all.
ss::NetworkParams make_params(double alpha, double d, double util, double snr_db) {
  std::optional<double> snr_linear;
  if (std::isfinite(snr_db)) snr_linear = std::pow(10.0, snr_db / 10.0);
  return ss::NetworkParams::from_utilization(alpha, d, util, snr_linear);
}

ordered_json snr_db_json(double snr_db) {
  if (std::isfinite(snr_db)) return snr_db;
  return snr_db > 0 ? "inf" : "-inf";
}

double snr_db_from_json(const nlohmann::json& value) {
  if (value.is_string()) {
    return parse_snr_db(value.get<std::string>());
  }
  return value.get<double>();
}

std::string format_value(const nlohmann::json& value) {
  if (value.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
    return buf;
  }
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

// Scalar reports carry their result under "result"; human and csv modes show
// just that object, json shows the whole reproducible document.
void print_scalar(OutputMode mode, const ordered_json& doc) {
  if (mode == OutputMode::Json) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  const auto& result = doc.at("result");
  if (mode == OutputMode::Csv) {
    std::string header;
    std::string row;
    for (const auto& [key, value] : result.items()) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += key;
      row += format_value(value);
    }
    std::cout << header << '\n' << row << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& [key, value] : result.items()) {
    width = std::max(width, key.size());
  }
  for (const auto& [key, value] : result.items()) {
    std::cout << key << ':' << std::string(width + 1 - key.size(), ' ')
              << format_value(value) << '\n';
  }
}

void print_table(OutputMode mode, const std::string& command, const ordered_json& spec_doc,
                 const ss::Table& table, const std::string& output_path) {
  if (mode == OutputMode::Json) {
    ordered_json doc;
    doc["command"] = command;
    doc["spec"] = spec_doc;
    doc["columns"] = table.columns;
    doc["rows"] = table.rows;
    std::cout << doc.dump(2) << '\n';
    return;
  }
  if (mode == OutputMode::Csv || output_path.empty()) {
    std::cout << ss::to_csv(table);
    return;
  }
  std::cout << "wrote " << output_path << " (" << table.rows.size() << " rows)\n"
            << "wrote " << output_path << ".json\n";
}

ordered_json load_json_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot read config file: " + path);
  try {
    return ordered_json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad config file " + path + ": " + e.what());
  }
}

void write_sidecar(const ss::SweepSpec& spec) {
  const std::string path = spec.output_path + ".json";
  std::ofstream side(path, std::ios::binary);
  if (!side) throw std::runtime_error("cannot open sidecar file: " + path);
  side << ss::sidecar_json(spec).dump(2) << '\n';
  side.flush();
  if (!side) throw std::runtime_error("failed writing sidecar file: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-band transmission capacity toolkit for random wireless networks"};
  app.require_subcommand(1);
  app.fallthrough();  // --output and --seed may follow the subcommand name

  std::string output_text = "human";
  std::uint64_t seed = 1;
  app.add_option("--output", output_text, "Report format")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "Master seed for all Monte-Carlo draws")
      ->capture_default_str();

  // optimal: closed-form operating point.
  auto* optimal_cmd =
      app.add_subcommand("optimal", "Optimal band count for a path-loss exponent and utilization");
  double opt_alpha = 4.0;
  double opt_util = 0.25;
  optimal_cmd->add_option("--alpha", opt_alpha, "Path-loss exponent (> 2)")
      ->capture_default_str();
  optimal_cmd->add_option("--util", opt_util, "Utilization r/w (> 0)")->capture_default_str();

  // capacity: closed-form density at an explicit band count.
  auto* capacity_cmd =
      app.add_subcommand("capacity", "Closed-form transmission capacity at a given band count");
  double cap_alpha = 4.0, cap_d = 10.0, cap_eps = 0.1, cap_util = 0.25;
  int cap_n = 1;
  std::string cap_snr = "inf";
  capacity_cmd->add_option("--alpha", cap_alpha, "Path-loss exponent (> 2)")
      ->capture_default_str();
  capacity_cmd->add_option("--d", cap_d, "Link distance in meters")->capture_default_str();
  capacity_cmd->add_option("--eps", cap_eps, "Outage constraint in (0, 1)")
      ->capture_default_str();
  capacity_cmd->add_option("--util", cap_util, "Utilization r/w (> 0)")->capture_default_str();
  capacity_cmd->add_option("--n", cap_n, "Number of sub-bands")->capture_default_str();
  capacity_cmd->add_option("--snr-db", cap_snr, "SNR in dB, or 'inf' for no noise")
      ->capture_default_str();

  // simulate: Monte-Carlo capacity solve or fixed-intensity outage estimate.
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Monte-Carlo capacity solve or outage estimate");
  double sim_alpha = 4.0, sim_d = 10.0, sim_eps = 0.1, sim_util = 0.25;
  int sim_n = 1;
  std::string sim_snr = "inf";
  std::string sim_fading = "pathloss";
  std::uint64_t sim_trials = 200000;
  double sim_window = 0.0;
  double sim_tol = 0.0;
  int sim_max_iter = 60;
  int sim_max_doublings = 40;
  double sim_intensity = 0.0;
  std::string sim_config;
  simulate_cmd->add_option("--alpha", sim_alpha, "Path-loss exponent (> 2)")
      ->capture_default_str();
  simulate_cmd->add_option("--d", sim_d, "Link distance in meters")->capture_default_str();
  simulate_cmd->add_option("--eps", sim_eps, "Outage constraint in (0, 1)")
      ->capture_default_str();
  simulate_cmd->add_option("--util", sim_util, "Utilization r/w (> 0)")->capture_default_str();
  simulate_cmd->add_option("--n", sim_n, "Number of sub-bands")->capture_default_str();
  simulate_cmd->add_option("--snr-db", sim_snr, "SNR in dB, or 'inf' for no noise")
      ->capture_default_str();
  simulate_cmd->add_option("--fading", sim_fading, "Fading model")
      ->check(CLI::IsMember({"pathloss", "rayleigh"}))
      ->capture_default_str();
  simulate_cmd->add_option("--trials", sim_trials, "Monte-Carlo trials per outage estimate")
      ->capture_default_str();
  simulate_cmd->add_option("--window-radius", sim_window,
                           "Sampling window radius in meters (0 = auto)")
      ->capture_default_str();
  simulate_cmd->add_option("--tol", sim_tol, "Bisection tolerance on outage (0 = auto)")
      ->capture_default_str();
  simulate_cmd->add_option("--max-iter", sim_max_iter, "Bisection iteration cap")
      ->capture_default_str();
  simulate_cmd->add_option("--max-doublings", sim_max_doublings, "Bracket doubling cap")
      ->capture_default_str();
  auto* intensity_opt = simulate_cmd->add_option(
      "--intensity", sim_intensity, "Estimate outage at this total intensity instead of solving");
  simulate_cmd->add_option("--config", sim_config,
                           "Re-run a previous json report (other flags ignored)");

  // sweep: figure tables.
  auto* sweep_cmd = app.add_subcommand("sweep", "Regenerate a figure table (CSV + json sidecar)");
  std::string sweep_figure = "fig2";
  std::vector<double> sweep_alpha_grid;
  int sweep_n_min = 1, sweep_n_max = 20;
  std::vector<double> sweep_utils;
  double sweep_alpha = 4.0, sweep_d = 10.0, sweep_eps = 0.1;
  std::string sweep_snr = "20";
  std::uint64_t sweep_trials = 200000;
  double sweep_window = 0.0;
  double sweep_tol = 0.0;
  int sweep_max_iter = 60;
  int sweep_max_doublings = 40;
  std::string sweep_out;
  std::string sweep_config;
  sweep_cmd->add_option("--figure", sweep_figure, "Which table to produce")
      ->check(CLI::IsMember({"fig1", "fig2", "ds-compare", "bounds-compare"}))
      ->capture_default_str();
  sweep_cmd->add_option("--alpha-grid", sweep_alpha_grid, "Path-loss exponents (comma separated)")
      ->delimiter(',');
  sweep_cmd->add_option("--n-min", sweep_n_min, "Smallest band count")->capture_default_str();
  sweep_cmd->add_option("--n-max", sweep_n_max, "Largest band count")->capture_default_str();
  sweep_cmd->add_option("--utils", sweep_utils, "Utilizations (comma separated)")
      ->delimiter(',');
  sweep_cmd->add_option("--alpha", sweep_alpha, "Path-loss exponent (> 2)")
      ->capture_default_str();
  sweep_cmd->add_option("--d", sweep_d, "Link distance in meters")->capture_default_str();
  sweep_cmd->add_option("--eps", sweep_eps, "Outage constraint in (0, 1)")
      ->capture_default_str();
  sweep_cmd->add_option("--snr-db", sweep_snr, "Finite-SNR column level in dB")
      ->capture_default_str();
  sweep_cmd->add_option("--trials", sweep_trials, "Monte-Carlo trials per outage estimate")
      ->capture_default_str();
  sweep_cmd->add_option("--window-radius", sweep_window,
                        "Sampling window radius in meters (0 = per-cell auto)")
      ->capture_default_str();
  sweep_cmd->add_option("--tol", sweep_tol, "Bisection tolerance on outage (0 = auto)")
      ->capture_default_str();
  sweep_cmd->add_option("--max-iter", sweep_max_iter, "Bisection iteration cap")
      ->capture_default_str();
  sweep_cmd->add_option("--max-doublings", sweep_max_doublings, "Bracket doubling cap")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (sidecar written next to it)");
  sweep_cmd->add_option("--config", sweep_config, "Re-run a previous sidecar");

  // bounds: deterministic bound chain at b = b*(alpha).
  auto* bounds_cmd =
      app.add_subcommand("bounds", "Clear-disk upper bound versus lattice lower bound");
  std::vector<double> bounds_alpha_grid = {3.0, 3.5, 4.0, 4.5, 5.0, 6.0};
  double bounds_d = 10.0, bounds_eps = 0.1;
  std::string bounds_out;
  bounds_cmd
      ->add_option("--alpha-grid", bounds_alpha_grid,
                   "Path-loss exponents (comma separated, each >= 3 for reliable tail bounds)")
      ->delimiter(',');
  bounds_cmd->add_option("--d", bounds_d, "Link distance in meters")->capture_default_str();
  bounds_cmd->add_option("--eps", bounds_eps, "Outage constraint in (0, 1)")
      ->capture_default_str();
  bounds_cmd->add_option("--out", bounds_out, "CSV output path (sidecar written next to it)");

  // ds: direct-sequence comparison table.
  auto* ds_cmd =
      app.add_subcommand("ds", "Split-band versus direct-sequence closed forms");
  double ds_alpha = 4.0, ds_d = 10.0, ds_eps = 0.1;
  std::vector<double> ds_utils = {0.25, 0.5};
  int ds_n_min = 1, ds_n_max = 20;
  std::string ds_out;
  ds_cmd->add_option("--alpha", ds_alpha, "Path-loss exponent (> 2)")->capture_default_str();
  ds_cmd->add_option("--d", ds_d, "Link distance in meters")->capture_default_str();
  ds_cmd->add_option("--eps", ds_eps, "Outage constraint in (0, 1)")->capture_default_str();
  ds_cmd->add_option("--utils", ds_utils, "Utilizations (comma separated)")->delimiter(',');
  ds_cmd->add_option("--n-min", ds_n_min, "Smallest band count")->capture_default_str();
  ds_cmd->add_option("--n-max", ds_n_max, "Largest band count")->capture_default_str();
  ds_cmd->add_option("--out", ds_out, "CSV output path (sidecar written next to it)");

  try {
    app.parse(argc, argv);
    const OutputMode mode = parse_output_mode(output_text);

    if (*optimal_cmd) {
      const ss::NetworkParams params =
          ss::NetworkParams::from_utilization(opt_alpha, 10.0, opt_util, std::nullopt);
      const double b_star = ss::optimal_spectral_efficiency(opt_alpha);
      const double beta_star = std::exp2(b_star) - 1.0;
      const ss::BandCountResult bands = ss::optimal_band_count(params);
      // The penalty is a ratio, so the epsilon used here cancels.
      const double lam_star =
          ss::capacity_interference_limited(params, bands.n_star, 0.1).lambda;
      const double lam_one = ss::capacity_interference_limited(params, 1, 0.1).lambda;
      ordered_json doc;
      doc["command"] = "optimal";
      doc["params"] = {{"alpha", opt_alpha}, {"util", opt_util}};
      doc["result"] = {{"b_star", b_star},
                       {"beta_star", beta_star},
                       {"beta_star_db", 10.0 * std::log10(beta_star)},
                       {"n_real", bands.n_real},
                       {"n_star", bands.n_star},
                       {"penalty", lam_star / lam_one}};
      print_scalar(mode, doc);
      return 0;
    }

    if (*capacity_cmd) {
      const double snr_db = parse_snr_db(cap_snr);
      const ss::NetworkParams params = make_params(cap_alpha, cap_d, cap_util, snr_db);
      const ss::BandPlan plan = ss::sinr_threshold(params, cap_n);
      const ss::CapacityResult cap = ss::capacity_approx(params, plan, cap_eps);
      ordered_json doc;
      doc["command"] = "capacity";
      doc["params"] = {{"alpha", cap_alpha}, {"d", cap_d},       {"epsilon", cap_eps},
                       {"util", cap_util},   {"snr_db", snr_db_json(snr_db)},
                       {"n", cap_n}};
      doc["result"] = {{"n", plan.n},
                       {"b", plan.b},
                       {"beta", plan.beta},
                       {"beta_db", 10.0 * std::log10(plan.beta)},
                       {"lambda", cap.lambda},
                       {"kind", ss::to_string(cap.kind)}};
      print_scalar(mode, doc);
      return 0;
    }

    if (*simulate_cmd) {
      double alpha = sim_alpha, d = sim_d, eps = sim_eps, util = sim_util;
      int n = sim_n;
      double snr_db = parse_snr_db(sim_snr);
      ss::FadingModel fading = parse_fading(sim_fading);
      bool have_intensity = intensity_opt->count() > 0;
      double intensity = sim_intensity;
      ss::SimConfig cfg;
      cfg.trials = sim_trials;
      cfg.master_seed = seed;
      cfg.bisect_max_iter = sim_max_iter;
      cfg.max_bracket_doublings = sim_max_doublings;

      ss::NetworkParams params;
      ss::BandPlan plan;
      if (!sim_config.empty()) {
        const ordered_json in = load_json_file(sim_config);
        try {
          const auto& p = in.at("params");
          alpha = p.at("alpha").get<double>();
          d = p.at("d").get<double>();
          eps = p.at("epsilon").get<double>();
          util = p.at("util").get<double>();
          snr_db = snr_db_from_json(p.at("snr_db"));
          n = p.at("n").get<int>();
          fading = parse_fading(p.at("fading").get<std::string>());
          const auto& s = in.at("sim");
          cfg.trials = s.at("trials").get<std::uint64_t>();
          cfg.window_radius = s.at("window_radius").get<double>();
          cfg.master_seed = s.at("master_seed").get<std::uint64_t>();
          cfg.bisect_tol_abs = s.at("bisect_tol_abs").get<double>();
          cfg.bisect_max_iter = s.at("bisect_max_iter").get<int>();
          cfg.max_bracket_doublings = s.at("max_bracket_doublings").get<int>();
          have_intensity = in.contains("intensity") && !in.at("intensity").is_null();
          if (have_intensity) intensity = in.at("intensity").get<double>();
        } catch (const nlohmann::json::exception& e) {
          throw std::invalid_argument("bad config file " + sim_config + ": " + e.what());
        }
        params = make_params(alpha, d, util, snr_db);
        plan = ss::sinr_threshold(params, n);
      } else {
        params = make_params(alpha, d, util, snr_db);
        plan = ss::sinr_threshold(params, n);
        cfg.window_radius =
            sim_window == 0.0 ? ss::default_window_radius(params, plan.beta) : sim_window;
        cfg.bisect_tol_abs =
            sim_tol == 0.0 ? ss::default_bisect_tol(cfg.trials, eps) : sim_tol;
      }

      ordered_json doc;
      doc["command"] = "simulate";
      doc["params"] = {{"alpha", alpha},
                       {"d", d},
                       {"epsilon", eps},
                       {"util", util},
                       {"snr_db", snr_db_json(snr_db)},
                       {"n", n},
                       {"fading", fading == ss::FadingModel::Rayleigh ? "rayleigh" : "pathloss"}};
      doc["sim"] = {{"trials", cfg.trials},
                    {"window_radius", cfg.window_radius},
                    {"master_seed", cfg.master_seed},
                    {"bisect_tol_abs", cfg.bisect_tol_abs},
                    {"bisect_max_iter", cfg.bisect_max_iter},
                    {"max_bracket_doublings", cfg.max_bracket_doublings}};
      doc["intensity"] = have_intensity ? ordered_json(intensity) : ordered_json(nullptr);
      if (have_intensity) {
        const ss::OutageEstimate est =
            ss::estimate_outage(params, plan, intensity, fading, cfg);
        doc["result"] = {{"p_out", est.p_out}, {"std_error", est.std_error}};
      } else {
        const ss::CapacityResult cap = ss::solve_capacity(params, n, eps, fading, cfg);
        doc["result"] = {{"lambda", cap.lambda},
                         {"std_error", cap.std_error},
                         {"kind", ss::to_string(cap.kind)}};
      }
      print_scalar(mode, doc);
      return 0;
    }

    if (*sweep_cmd) {
      ss::SweepSpec spec;
      if (!sweep_config.empty()) {
        spec = ss::spec_from_sidecar(load_json_file(sweep_config));
        if (!sweep_out.empty()) spec.output_path = sweep_out;
      } else {
        spec.figure = ss::figure_from_string(sweep_figure);
        if (!sweep_alpha_grid.empty()) spec.alpha_grid = sweep_alpha_grid;
        spec.n_min = sweep_n_min;
        spec.n_max = sweep_n_max;
        if (!sweep_utils.empty()) spec.utils = sweep_utils;
        spec.alpha = sweep_alpha;
        spec.d = sweep_d;
        spec.epsilon = sweep_eps;
        spec.snr_db = parse_snr_db(sweep_snr);
        spec.sim.trials = sweep_trials;
        spec.sim.window_radius = sweep_window;
        spec.sim.master_seed = seed;
        spec.sim.bisect_tol_abs =
            sweep_tol == 0.0 ? ss::default_bisect_tol(sweep_trials, sweep_eps) : sweep_tol;
        spec.sim.bisect_max_iter = sweep_max_iter;
        spec.sim.max_bracket_doublings = sweep_max_doublings;
        spec.output_path = sweep_out;
      }
      const ss::Table table = ss::run_sweep(spec);
      if (!spec.output_path.empty()) {
        ss::write_csv(table, spec.output_path);
        write_sidecar(spec);
      }
      print_table(mode, "sweep", ss::sidecar_json(spec), table, spec.output_path);
      return 0;
    }

    if (*bounds_cmd) {
      ss::SweepSpec spec;
      spec.figure = ss::Figure::BoundsCompare;
      spec.alpha_grid = bounds_alpha_grid;
      spec.d = bounds_d;
      spec.epsilon = bounds_eps;
      spec.sim.master_seed = seed;
      spec.output_path = bounds_out;
      const ss::Table table = ss::run_bounds_compare(spec);
      if (!spec.output_path.empty()) {
        ss::write_csv(table, spec.output_path);
        write_sidecar(spec);
      }
      print_table(mode, "bounds", ss::sidecar_json(spec), table, spec.output_path);
      return 0;
    }

    if (*ds_cmd) {
      ss::SweepSpec spec;
      spec.figure = ss::Figure::DsCompare;
      spec.alpha = ds_alpha;
      spec.d = ds_d;
      spec.epsilon = ds_eps;
      spec.utils = ds_utils;
      spec.n_min = ds_n_min;
      spec.n_max = ds_n_max;
      spec.sim.master_seed = seed;
      spec.output_path = ds_out;
      const ss::Table table = ss::run_ds_compare(spec);
      if (!spec.output_path.empty()) {
        ss::write_csv(table, spec.output_path);
        write_sidecar(spec);
      }
      print_table(mode, "ds", ss::sidecar_json(spec), table, spec.output_path);
      return 0;
    }

    std::cout << app.help();
    return 0;
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ss::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
