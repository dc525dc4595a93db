#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "powerlaw/distributions.hpp"
#include "powerlaw/estimators.hpp"
#include "powerlaw/random.hpp"
#include "powerlaw/stats.hpp"

namespace powerlaw {

// For Pareto data the log-ratios log(x_(i)/xm) of the ordered sample are
// exponential order statistics, and by Renyi's representation these are
// weighted partial sums of independent unit exponentials:
//
//   log(x_(i)/xm) ~ (1/beta) * sum_{j<=i} Z_j / (n - j + 1),  Z_j ~ Exp(1).
//
// Substituting this and the empirical tail (n-i+1)/n into the least-squares
// estimator gives its distribution as a beta-free random factor times beta.
// The functions below sample that factor directly, with beta = 1 internally
// and scaled afterwards.

/// Partial sums k_(i) = sum_{j<=i} Z_j / (n - j + 1) for i = 1..n (the
/// beta = 1 case). Nondecreasing and nonnegative.
inline std::vector<double> renyi_order_logs(std::size_t n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("renyi_order_logs: need n >= 1");
  std::vector<double> k(n);
  double acc = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    acc += rng.exponential() / static_cast<double>(n - j + 1);
    k[j - 1] = acc;
  }
  return k;
}

/// The bracketed random factor of the least-squares estimator, evaluated on
/// a vector of ordered log-ratios: [sum k_(i) log(n/(n-i+1))] / [sum k_(i)^2].
/// log(n/(n-i+1)) is computed as log n - log(n-i+1) to limit cancellation
/// for i near n.
inline double renyi_factor_from_logs(std::span<const double> k) {
  const std::size_t n = k.size();
  if (n < 2) throw std::invalid_argument("renyi_factor_from_logs: need n >= 2");
  const double log_n = std::log(static_cast<double>(n));
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double w = log_n - std::log(static_cast<double>(n - i + 1));
    num += k[i - 1] * w;
    den += k[i - 1] * k[i - 1];
  }
  if (!(den > 0.0)) {
    throw std::domain_error("renyi_factor_from_logs: degenerate draw");
  }
  return num / den;
}

/// One draw of the beta-free factor.
inline double renyi_ols_factor(std::size_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("renyi_ols_factor: need n >= 2");
  return renyi_factor_from_logs(renyi_order_logs(n, rng));
}

/// A factor draw together with the implied estimate for a concrete beta.
struct RenyiDraw {
  double factor = 0.0;
  double beta_hat = 0.0;
  std::size_t n = 0;
};

inline RenyiDraw renyi_draw(std::size_t n, double beta, Rng& rng) {
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw std::domain_error("renyi_draw: beta must be > 0");
  }
  RenyiDraw d;
  d.factor = renyi_ols_factor(n, rng);
  d.beta_hat = d.factor * beta;
  d.n = n;
  return d;
}

/// Two-sample KS comparison between the direct pipeline (Pareto sampling +
/// least squares on the empirical tail) and the Renyi representation.
struct EquivalenceReport {
  std::size_t n = 0;
  std::size_t draws = 0;
  double beta = 0.0;
  double ks = 0.0;
  double threshold = 0.0;
  double significance = 0.0;
  bool accept = false;
};

/// Draw `draws` estimates through each pipeline and test the distributions
/// for equality at the given significance. The two pipelines share no code
/// path beyond the KS comparison itself, so acceptance validates the
/// sampler, the empirical tail, the least-squares estimator, and the order
/// statistics representation jointly.
inline EquivalenceReport renyi_vs_direct(std::size_t n, double beta,
                                         std::size_t draws,
                                         std::uint64_t seed,
                                         double significance = 0.01) {
  if (n < 2) throw std::invalid_argument("renyi_vs_direct: need n >= 2");
  if (draws < 100) throw std::invalid_argument("renyi_vs_direct: need draws >= 100");
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw std::domain_error("renyi_vs_direct: beta must be > 0");
  }
  const PowerLawTail pareto = PowerLawTail::pareto(1.0, beta);
  std::vector<double> direct;
  std::vector<double> renyi;
  direct.reserve(draws);
  renyi.reserve(draws);
  for (std::size_t d = 0; d < draws; ++d) {
    const Sample s = order_sample(sample(pareto, n, derive_seed(seed, 1, d)), 1.0);
    direct.push_back(ols_raw(s).beta_hat);
    Rng rng(derive_seed(seed, 2, d));
    renyi.push_back(renyi_draw(n, beta, rng).beta_hat);
  }
  EquivalenceReport rep;
  rep.n = n;
  rep.draws = draws;
  rep.beta = beta;
  rep.ks = two_sample_ks(direct, renyi);
  rep.threshold = two_sample_ks_threshold(draws, draws, significance);
  rep.significance = significance;
  rep.accept = rep.ks < rep.threshold;
  return rep;
}

}  // namespace powerlaw
