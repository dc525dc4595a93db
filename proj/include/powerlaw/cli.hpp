#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "powerlaw/io.hpp"
#include "powerlaw/powerlaw.hpp"

namespace powerlaw::cli {

// Exit codes are a stable contract: 0 success, 1 I/O failure, 2 validation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitValidation = 2;

/// File-system failures, as opposed to validation of inputs.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<double> read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  return read_values(in);
}

// Run `write` against the file at `path`, or against `fallback` when path
// is empty (the default-to-stdout contract).
template <typename WriteFn>
void with_output(const std::string& path, std::ostream& fallback,
                 WriteFn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  write(out);
  out.flush();
  if (!out) throw IoError("failed writing output file: " + path);
}

/// Parse `pareto:xm,beta` | `piecewise:xm,beta` | `lomax:lambda,beta`.
inline AnyDistribution parse_dist_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("bad distribution spec '" + spec +
                                "' (expected name:param,param)");
  }
  const std::string name = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  const auto comma = rest.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("bad distribution spec '" + spec +
                                "' (expected two parameters)");
  }
  const double a = parse_double(rest.substr(0, comma));
  const double b = parse_double(rest.substr(comma + 1));
  if (name == "pareto") return PowerLawTail::pareto(a, b);
  if (name == "piecewise") return PiecewiseParams(a, b);
  if (name == "lomax") return LomaxParams(a, b);
  throw std::invalid_argument("unknown distribution '" + name + "'");
}

inline EstimatorId parse_estimator(const std::string& name) {
  const auto id = estimator_from_string(name);
  if (!id) {
    throw std::invalid_argument("unknown estimator '" + name +
                                "' (use MLE1|MLE2|OLS1|OLS2)");
  }
  return *id;
}

}  // namespace detail

/// Run the CLI against an argument list (without the program name).
/// Reports go to `out`; logs and warnings to `err`.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Pareto tail-exponent estimation and Monte-Carlo comparison"};
  app.require_subcommand(1);

  // --- sample ---------------------------------------------------------
  std::string sample_spec;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = kDefaultSeed;
  std::string sample_out;
  auto* cmd_sample = app.add_subcommand(
      "sample", "Draw n values by inverse transform, one per line");
  cmd_sample->add_option("dist", sample_spec,
                         "pareto:xm,beta | piecewise:xm,beta | lomax:lambda,beta")
      ->required();
  cmd_sample->add_option("--n", sample_n, "sample size")->required();
  cmd_sample->add_option("--seed", sample_seed, "RNG seed (default 42)");
  cmd_sample->add_option("--out", sample_out, "output path (default stdout)");

  // --- fit ------------------------------------------------------------
  std::string fit_data;
  double fit_xm = 0.0;
  std::string fit_estimator = "MLE2";
  double fit_gamma_value = 1.6;
  std::string fit_out;
  std::string fit_format = "json";
  auto* cmd_fit = app.add_subcommand(
      "fit", "Estimate the tail exponent of the data beyond a cutoff");
  cmd_fit->add_option("data", fit_data, "newline-delimited data file")->required();
  cmd_fit->add_option("--xm", fit_xm, "cutoff; values <= xm are dropped")->required();
  cmd_fit->add_option("--estimator", fit_estimator, "MLE1|MLE2|OLS1|OLS2");
  cmd_fit->add_option("--gamma", fit_gamma_value, "sigmoid gamma for OLS2");
  cmd_fit->add_option("--out", fit_out, "output path (default stdout)");
  cmd_fit->add_option("--format", fit_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // --- cutoff ---------------------------------------------------------
  std::string cutoff_data;
  std::size_t cutoff_min_tail = 10;
  std::string cutoff_out;
  std::string cutoff_summary;
  auto* cmd_cutoff = app.add_subcommand(
      "cutoff", "Scan for the cutoff minimizing the KS distance");
  cmd_cutoff->add_option("data", cutoff_data, "newline-delimited data file")
      ->required();
  cmd_cutoff->add_option("--min-tail", cutoff_min_tail,
                         "minimum tail points above a candidate");
  cmd_cutoff->add_option("--out", cutoff_out,
                         "scan CSV path (default stdout)");
  cmd_cutoff->add_option("--summary", cutoff_summary,
                         "summary JSON path (default stdout)");

  // --- grid -----------------------------------------------------------
  std::string grid_config;
  std::string grid_out;
  std::string grid_closer_out;
  unsigned grid_threads = 0;
  auto* cmd_grid = app.add_subcommand(
      "grid", "Run a Monte-Carlo experiment grid from a JSON config");
  cmd_grid->add_option("config", grid_config, "experiment JSON file")->required();
  cmd_grid->add_option("--out", grid_out, "stats CSV path (default stdout)");
  cmd_grid->add_option("--closer-out", grid_closer_out,
                       "closer-probability CSV path (default stdout)");
  cmd_grid->add_option("--threads", grid_threads,
                       "worker threads (0 = hardware)");

  // --- renyi ----------------------------------------------------------
  std::size_t renyi_n = 0;
  std::size_t renyi_draws = 0;
  double renyi_beta = 0.0;
  std::uint64_t renyi_seed = kDefaultSeed;
  std::string renyi_out;
  auto* cmd_renyi = app.add_subcommand(
      "renyi", "Sample the LR estimator via the order-statistics representation");
  cmd_renyi->add_option("--n", renyi_n, "sample size per draw")->required();
  cmd_renyi->add_option("--draws", renyi_draws, "number of draws")->required();
  cmd_renyi->add_option("--beta", renyi_beta, "true exponent")->required();
  cmd_renyi->add_option("--seed", renyi_seed, "RNG seed (default 42)");
  cmd_renyi->add_option("--out", renyi_out, "draws CSV path (default stdout)");

  // --- fit-gamma ------------------------------------------------------
  std::string fg_curve;
  double fg_beta = 0.0;
  double fg_lo = 0.5;
  double fg_hi = 3.0;
  std::string fg_estimator = "OLS1";
  std::string fg_out;
  auto* cmd_fit_gamma = app.add_subcommand(
      "fit-gamma", "Fit the sigmoid gamma to an OLS1 mean curve");
  cmd_fit_gamma->add_option("curve", fg_curve,
                            "CSV with header n,mean or grid stats CSV")
      ->required();
  cmd_fit_gamma->add_option("--beta", fg_beta, "true exponent of the curve")
      ->required();
  cmd_fit_gamma->add_option("--lo", fg_lo, "lower gamma bound");
  cmd_fit_gamma->add_option("--hi", fg_hi, "upper gamma bound");
  cmd_fit_gamma->add_option("--estimator", fg_estimator,
                            "estimator rows to use from a grid stats CSV");
  cmd_fit_gamma->add_option("--out", fg_out, "output path (default stdout)");

  try {
    std::vector<const char*> argv;
    argv.push_back("powerlaw");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (*cmd_sample) {
      const AnyDistribution dist = detail::parse_dist_spec(sample_spec);
      const std::vector<double> values = sample(dist, sample_n, sample_seed);
      detail::with_output(sample_out, out,
                          [&](std::ostream& os) { write_values(os, values); });
      const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
      (sample_out.empty() ? err : out)
          << "n=" << values.size() << " min=" << format_double(*mn)
          << " max=" << format_double(*mx) << '\n';
    } else if (*cmd_fit) {
      const std::vector<double> raw = detail::read_data_file(fit_data);
      std::vector<double> tail;
      tail.reserve(raw.size());
      for (double v : raw) {
        if (v > fit_xm) tail.push_back(v);
      }
      const std::size_t dropped = raw.size() - tail.size();
      if (dropped > 0) {
        err << "dropped " << dropped << " values <= xm\n";
      }
      if (tail.empty()) {
        throw std::invalid_argument("no values above the cutoff");
      }
      const Sample s = order_sample(std::move(tail), fit_xm);
      const EstimateReport report = estimate(
          s, detail::parse_estimator(fit_estimator), {fit_gamma_value});
      detail::with_output(fit_out, out, [&](std::ostream& os) {
        if (fit_format == "csv") {
          write_report_csv(os, report);
        } else {
          os << report_to_json(report).dump(2) << '\n';
        }
      });
    } else if (*cmd_cutoff) {
      const std::vector<double> raw = detail::read_data_file(cutoff_data);
      const CutoffScanResult result = scan_cutoff(raw, cutoff_min_tail);
      detail::with_output(cutoff_out, out,
                          [&](std::ostream& os) { write_scan_csv(os, result); });
      detail::with_output(cutoff_summary, out, [&](std::ostream& os) {
        os << scan_summary_json(result).dump(2) << '\n';
      });
    } else if (*cmd_grid) {
      std::ifstream in(grid_config);
      if (!in) throw IoError("cannot open config file: " + grid_config);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad grid config: ") + e.what());
      }
      const ExperimentGrid grid = grid_from_json(j);
      const GridStats stats = run_grid(grid, grid_threads);
      detail::with_output(grid_out, out, [&](std::ostream& os) {
        write_grid_stats_csv(os, stats);
      });
      if (stats.closer_probability.empty()) {
        err << "closer-probability omitted: config must request both MLE2 and OLS2\n";
      } else {
        detail::with_output(grid_closer_out, out, [&](std::ostream& os) {
          write_closer_csv(os, stats);
        });
      }
    } else if (*cmd_renyi) {
      if (renyi_n < 2) {
        throw std::invalid_argument("renyi: need n >= 2");
      }
      std::vector<RenyiDraw> draws;
      draws.reserve(renyi_draws);
      for (std::size_t d = 0; d < renyi_draws; ++d) {
        Rng rng(derive_seed(renyi_seed, 3, d));
        draws.push_back(renyi_draw(renyi_n, renyi_beta, rng));
      }
      detail::with_output(renyi_out, out,
                          [&](std::ostream& os) { write_renyi_csv(os, draws); });
      if (renyi_draws >= 100) {
        const EquivalenceReport rep =
            renyi_vs_direct(renyi_n, renyi_beta, renyi_draws, renyi_seed);
        out << equivalence_to_json(rep).dump(2) << '\n';
      } else {
        err << "equivalence report omitted: needs at least 100 draws\n";
      }
    } else if (*cmd_fit_gamma) {
      std::ifstream in(fg_curve);
      if (!in) throw IoError("cannot open curve file: " + fg_curve);
      const auto curve = read_mean_curve_csv(in, fg_estimator);
      const double gamma = fit_gamma(curve, fg_beta, {fg_lo, fg_hi});
      detail::with_output(fg_out, out, [&](std::ostream& os) {
        os << nlohmann::json{{"gamma", gamma},
                             {"beta", fg_beta},
                             {"points", curve.size()},
                             {"bounds", {fg_lo, fg_hi}}}
                  .dump(2)
           << '\n';
      });
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace powerlaw::cli
