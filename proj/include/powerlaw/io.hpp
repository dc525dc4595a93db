#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "powerlaw/cutoff.hpp"
#include "powerlaw/empirical.hpp"
#include "powerlaw/estimators.hpp"
#include "powerlaw/montecarlo.hpp"
#include "powerlaw/renyi.hpp"

namespace powerlaw {

/// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed number: '" + std::string(s) + "'");
  }
  return v;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_csv_row(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace detail

/// Newline-delimited decimal text, one value per line.
inline void write_values(std::ostream& os, const std::vector<double>& values) {
  for (double v : values) os << format_double(v) << '\n';
}

inline std::vector<double> read_values(std::istream& is) {
  std::vector<double> out;
  std::string line;
  while (std::getline(is, line)) {
    const std::string_view t = detail::trim(line);
    if (t.empty()) continue;
    out.push_back(parse_double(t));
  }
  return out;
}

inline void write_tail_curve_csv(std::ostream& os, const TailCurve& curve) {
  os << "x,tail\n";
  for (const TailPoint& p : curve.points) {
    os << format_double(p.x) << ',' << format_double(p.tail) << '\n';
  }
}

inline void write_scan_csv(std::ostream& os, const CutoffScanResult& r) {
  os << "candidate_xm,ks,beta_hat\n";
  for (const CutoffCandidate& c : r.scan) {
    os << format_double(c.xm) << ',' << format_double(c.ks) << ','
       << format_double(c.beta_hat) << '\n';
  }
}

/// JSON summary of a cutoff scan. The method block records the conventions
/// baked into the scan so reported cutoffs stay auditable.
inline nlohmann::json scan_summary_json(const CutoffScanResult& r) {
  return nlohmann::json{
      {"xm_hat", r.xm_hat},
      {"ks_at_min", r.ks_at_min},
      {"tail_count", r.tail_count},
      {"method",
       {{"estimator", "MLE1"},
        {"ks", "sup over both one-sided gaps at each empirical jump"},
        {"candidates", "unique sample values"}}}};
}

inline nlohmann::json report_to_json(const EstimateReport& r) {
  nlohmann::json j{{"estimator", std::string(to_string(r.estimator))},
                   {"beta_hat", r.beta_hat},
                   {"n", r.n},
                   {"correction", r.correction}};
  if (r.gamma) {
    j["gamma"] = *r.gamma;
  } else {
    j["gamma"] = nullptr;
  }
  return j;
}

inline void write_report_csv(std::ostream& os, const EstimateReport& r) {
  os << "estimator,beta_hat,n,correction,gamma\n"
     << to_string(r.estimator) << ',' << format_double(r.beta_hat) << ','
     << r.n << ',' << format_double(r.correction) << ','
     << (r.gamma ? format_double(*r.gamma) : std::string()) << '\n';
}

/// Parse an ExperimentGrid from a JSON document mirroring its fields.
inline ExperimentGrid grid_from_json(const nlohmann::json& j) {
  ExperimentGrid g;
  try {
    g.beta_true = j.at("beta_true").get<double>();
    g.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
    g.replications = j.at("replications").get<std::size_t>();
    g.seed = j.value("seed", kDefaultSeed);
    g.gamma = j.value("gamma", 1.6);
    for (const auto& name : j.at("estimators")) {
      const auto id = estimator_from_string(name.get<std::string>());
      if (!id) {
        throw std::invalid_argument("unknown estimator '" +
                                    name.get<std::string>() + "'");
      }
      g.estimators.push_back(*id);
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad grid config: ") + e.what());
  }
  validate(g);
  return g;
}

inline void write_grid_stats_csv(std::ostream& os, const GridStats& s) {
  os << "n,estimator,mean,variance,se_mean\n";
  for (const GridCell& c : s.cells) {
    os << c.n << ',' << to_string(c.estimator) << ',' << format_double(c.mean)
       << ',' << format_double(c.variance) << ',' << format_double(c.se_mean)
       << '\n';
  }
}

inline void write_closer_csv(std::ostream& os, const GridStats& s) {
  os << "n,closer_probability\n";
  for (const CloserPoint& p : s.closer_probability) {
    os << p.n << ',' << format_double(p.probability) << '\n';
  }
}

inline void write_renyi_csv(std::ostream& os,
                            const std::vector<RenyiDraw>& draws) {
  os << "draw_index,factor,beta_hat\n";
  for (std::size_t i = 0; i < draws.size(); ++i) {
    os << i << ',' << format_double(draws[i].factor) << ','
       << format_double(draws[i].beta_hat) << '\n';
  }
}

inline nlohmann::json equivalence_to_json(const EquivalenceReport& r) {
  return nlohmann::json{{"n", r.n},
                        {"draws", r.draws},
                        {"beta", r.beta},
                        {"ks", r.ks},
                        {"threshold", r.threshold},
                        {"significance", r.significance},
                        {"accept", r.accept}};
}

/// Read an OLS1 mean curve for the gamma fit. Accepts either a two-column
/// `n,mean` CSV or the grid stats CSV (rows are filtered on the estimator
/// column).
inline std::vector<std::pair<double, double>> read_mean_curve_csv(
    std::istream& is, std::string_view estimator = "OLS1") {
  std::vector<std::pair<double, double>> curve;
  std::string line;
  if (!std::getline(is, line)) {
    throw std::invalid_argument("mean curve: empty input");
  }
  const auto header = detail::split_csv_row(detail::trim(line));
  bool grid_format = false;
  if (header.size() >= 3 && header[0] == "n" && header[1] == "estimator" &&
      header[2] == "mean") {
    grid_format = true;
  } else if (!(header.size() == 2 && header[0] == "n" && header[1] == "mean")) {
    throw std::invalid_argument(
        "mean curve: expected header 'n,mean' or 'n,estimator,mean,...'");
  }
  while (std::getline(is, line)) {
    const std::string_view t = detail::trim(line);
    if (t.empty()) continue;
    const auto row = detail::split_csv_row(t);
    if (grid_format) {
      if (row.size() != header.size()) {
        throw std::invalid_argument("mean curve: ragged row");
      }
      if (row[1] != estimator) continue;
      curve.emplace_back(parse_double(row[0]), parse_double(row[2]));
    } else {
      if (row.size() != 2) {
        throw std::invalid_argument("mean curve: ragged row");
      }
      curve.emplace_back(parse_double(row[0]), parse_double(row[1]));
    }
  }
  return curve;
}

}  // namespace powerlaw
