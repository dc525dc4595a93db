#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "powerlaw/distributions.hpp"
#include "powerlaw/estimators.hpp"
#include "powerlaw/parallel.hpp"
#include "powerlaw/random.hpp"
#include "powerlaw/stats.hpp"

namespace powerlaw {

/// Monte-Carlo experiment configuration. Each (n, replication) cell draws a
/// fresh Pareto(xm = 1, beta_true) sample -- xm is fixed to 1 without loss
/// of generality since every estimator is scale equivariant -- and all
/// requested estimators are evaluated on that same sample.
struct ExperimentGrid {
  double beta_true = 1.5;
  std::vector<std::size_t> n_grid;
  std::size_t replications = 0;
  std::uint64_t seed = kDefaultSeed;
  std::vector<EstimatorId> estimators;
  double gamma = 1.6;
};

inline void validate(const ExperimentGrid& g) {
  if (!(std::isfinite(g.beta_true) && g.beta_true > 0.0)) {
    throw std::domain_error("ExperimentGrid: beta_true must be > 0");
  }
  if (g.n_grid.empty()) {
    throw std::invalid_argument("ExperimentGrid: n_grid must be nonempty");
  }
  for (std::size_t i = 0; i < g.n_grid.size(); ++i) {
    if (g.n_grid[i] < 2) {
      throw std::invalid_argument("ExperimentGrid: every n must be >= 2");
    }
    if (i > 0 && g.n_grid[i] <= g.n_grid[i - 1]) {
      throw std::invalid_argument("ExperimentGrid: n_grid must be strictly ascending");
    }
  }
  if (g.replications < 2) {
    throw std::invalid_argument("ExperimentGrid: replications must be >= 2");
  }
  if (g.estimators.empty()) {
    throw std::invalid_argument("ExperimentGrid: estimator set must be nonempty");
  }
  if (!(std::isfinite(g.gamma) && g.gamma > 0.0)) {
    throw std::domain_error("ExperimentGrid: gamma must be > 0");
  }
}

struct GridCell {
  std::size_t n = 0;
  EstimatorId estimator = EstimatorId::Mle1;
  double mean = 0.0;
  double variance = 0.0;
  double se_mean = 0.0;
};

struct CloserPoint {
  std::size_t n = 0;
  double probability = 0.0;  // fraction of reps with |OLS2-b| < |MLE2-b|
};

/// Aggregated grid results. `estimates` keeps the raw per-replication
/// estimates (indexed by n, then estimator, in grid order) for diagnostics;
/// only `cells` and `closer_probability` are serialized.
struct GridStats {
  std::vector<std::size_t> n_grid;
  std::vector<EstimatorId> estimators;
  std::vector<std::vector<double>> estimates;  // [n_idx * E + e][replication]
  std::vector<GridCell> cells;
  std::vector<CloserPoint> closer_probability;

  const std::vector<double>& estimates_for(std::size_t n_index,
                                           EstimatorId id) const {
    for (std::size_t e = 0; e < estimators.size(); ++e) {
      if (estimators[e] == id) {
        return estimates[n_index * estimators.size() + e];
      }
    }
    throw std::invalid_argument("GridStats: estimator not in grid");
  }
};

namespace detail {

// Per-sample evaluation of all requested estimators, sharing the log pass.
// Operation order matches the public estimator functions exactly, so the
// results are bit-identical to calling them (unit-tested).
struct CellEvaluator {
  std::vector<EstimatorId> ids;
  double rn = 0.0;          // sigmoid factor, if OLS2 requested
  std::vector<double> ols_weights;  // log n - log(n-i+1), if OLS requested

  CellEvaluator(std::size_t n, const std::vector<EstimatorId>& estimators,
                double gamma)
      : ids(estimators) {
    const bool need_ols =
        std::find(ids.begin(), ids.end(), EstimatorId::Ols1) != ids.end() ||
        std::find(ids.begin(), ids.end(), EstimatorId::Ols2) != ids.end();
    if (std::find(ids.begin(), ids.end(), EstimatorId::Ols2) != ids.end()) {
      rn = sigmoid_factor_real(static_cast<double>(n), gamma);
    }
    if (need_ols) {
      const double log_n = std::log(static_cast<double>(n));
      ols_weights.resize(n);
      for (std::size_t i = 1; i <= n; ++i) {
        ols_weights[i - 1] = log_n - std::log(static_cast<double>(n - i + 1));
      }
    }
  }

  // out must have ids.size() slots.
  void evaluate(const Sample& s, double* out) const {
    const std::size_t n = s.size();
    double log_sum = 0.0;
    double ols_num = 0.0;
    double ols_den = 0.0;
    const bool need_ols = !ols_weights.empty();
    for (std::size_t i = 0; i < n; ++i) {
      const double k = std::log(s.values()[i] / s.xm());
      log_sum += k;
      if (need_ols) {
        ols_num += k * ols_weights[i];
        ols_den += k * k;
      }
    }
    const double mle1 = static_cast<double>(n) / log_sum;
    const double ols1 = need_ols ? ols_num / ols_den : 0.0;
    for (std::size_t e = 0; e < ids.size(); ++e) {
      switch (ids[e]) {
        case EstimatorId::Mle1:
          out[e] = mle1;
          break;
        case EstimatorId::Mle2:
          out[e] = mle1 * (static_cast<double>(n - 1) / static_cast<double>(n));
          break;
        case EstimatorId::Ols1:
          out[e] = ols1;
          break;
        case EstimatorId::Ols2:
          out[e] = ols1 / rn;
          break;
      }
    }
  }
};

}  // namespace detail

/// Run the full grid. Cells are independent tasks keyed by (n, replication)
/// with per-cell seeds derived from the master seed, so the output is
/// bit-identical for any thread count (0 = hardware concurrency).
inline GridStats run_grid(const ExperimentGrid& g, unsigned threads = 0) {
  validate(g);
  const std::size_t num_n = g.n_grid.size();
  const std::size_t num_e = g.estimators.size();
  const std::size_t reps = g.replications;

  GridStats stats;
  stats.n_grid = g.n_grid;
  stats.estimators = g.estimators;
  stats.estimates.assign(num_n * num_e, std::vector<double>(reps, 0.0));

  std::vector<detail::CellEvaluator> evaluators;
  evaluators.reserve(num_n);
  for (std::size_t ni = 0; ni < num_n; ++ni) {
    evaluators.emplace_back(g.n_grid[ni], g.estimators, g.gamma);
  }

  const PowerLawTail pareto = PowerLawTail::pareto(1.0, g.beta_true);
  detail::parallel_for(num_n * reps, threads, [&](std::size_t task) {
    const std::size_t ni = task / reps;
    const std::size_t rep = task % reps;
    const std::size_t n = g.n_grid[ni];
    const std::uint64_t cell_seed =
        derive_seed(g.seed, static_cast<std::uint64_t>(n), rep);
    const Sample s = order_sample(sample(pareto, n, cell_seed), 1.0);
    std::vector<double> out(num_e);
    evaluators[ni].evaluate(s, out.data());
    for (std::size_t e = 0; e < num_e; ++e) {
      stats.estimates[ni * num_e + e][rep] = out[e];
    }
  });

  stats.cells.reserve(num_n * num_e);
  for (std::size_t ni = 0; ni < num_n; ++ni) {
    for (std::size_t e = 0; e < num_e; ++e) {
      const std::vector<double>& xs = stats.estimates[ni * num_e + e];
      GridCell cell;
      cell.n = g.n_grid[ni];
      cell.estimator = g.estimators[e];
      cell.mean = mean(xs);
      cell.variance = sample_variance(xs);
      cell.se_mean = std::sqrt(cell.variance / static_cast<double>(reps));
      stats.cells.push_back(cell);
    }
  }

  const bool have_pair =
      std::find(g.estimators.begin(), g.estimators.end(), EstimatorId::Mle2) !=
          g.estimators.end() &&
      std::find(g.estimators.begin(), g.estimators.end(), EstimatorId::Ols2) !=
          g.estimators.end();
  if (have_pair) {
    stats.closer_probability.reserve(num_n);
    for (std::size_t ni = 0; ni < num_n; ++ni) {
      const std::vector<double>& mle2 = stats.estimates_for(ni, EstimatorId::Mle2);
      const std::vector<double>& ols2 = stats.estimates_for(ni, EstimatorId::Ols2);
      std::size_t closer = 0;
      for (std::size_t r = 0; r < reps; ++r) {
        if (std::abs(ols2[r] - g.beta_true) < std::abs(mle2[r] - g.beta_true)) {
          ++closer;
        }
      }
      stats.closer_probability.push_back(
          {g.n_grid[ni],
           static_cast<double>(closer) / static_cast<double>(reps)});
    }
  }
  return stats;
}

/// Fit gamma by nonlinear least squares on a mean curve of the raw OLS
/// estimator: minimize sum_n (mean(n)/beta - r_n(gamma))^2 over the bracket
/// by golden-section search (absolute tolerance 1e-4 in gamma).
inline double fit_gamma(const std::vector<std::pair<double, double>>& mean_curve,
                        double beta_true,
                        std::pair<double, double> gamma_bounds) {
  if (mean_curve.size() < 3) {
    throw std::invalid_argument("fit_gamma: need at least 3 curve points");
  }
  if (!(std::isfinite(beta_true) && beta_true > 0.0)) {
    throw std::domain_error("fit_gamma: beta_true must be > 0");
  }
  const auto [lo, hi] = gamma_bounds;
  if (!(std::isfinite(lo) && std::isfinite(hi) && 0.0 < lo && lo < hi)) {
    throw std::invalid_argument("fit_gamma: bounds must satisfy 0 < lo < hi");
  }
  auto objective = [&](double gamma) {
    double sse = 0.0;
    for (const auto& [n, m] : mean_curve) {
      const double r = detail::sigmoid_factor_real(n, gamma);
      const double diff = m / beta_true - r;
      sse += diff * diff;
    }
    return sse;
  };
  // (log n)^gamma is monotone in gamma for fixed n, so r_n defined at both
  // endpoints implies it is defined on the whole bracket.
  objective(lo);
  objective(hi);
  return golden_section_minimize(objective, lo, hi, 1e-4);
}

/// Slope of log(variance) against log(n); about -1 when the variance decays
/// like 1/n.
inline double variance_slope(
    const std::vector<std::pair<double, double>>& var_curve) {
  if (var_curve.size() < 3) {
    throw std::invalid_argument("variance_slope: need at least 3 points");
  }
  std::vector<double> log_n;
  std::vector<double> log_var;
  log_n.reserve(var_curve.size());
  log_var.reserve(var_curve.size());
  for (const auto& [n, v] : var_curve) {
    if (!(n > 0.0)) throw std::domain_error("variance_slope: n must be > 0");
    if (!(v > 0.0)) {
      throw std::domain_error("variance_slope: variances must be > 0");
    }
    log_n.push_back(std::log(n));
    log_var.push_back(std::log(v));
  }
  return fit_line(log_n, log_var).slope;
}

}  // namespace powerlaw
