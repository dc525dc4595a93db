#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "powerlaw/empirical.hpp"
#include "powerlaw/estimators.hpp"

namespace powerlaw {

/// Kolmogorov-Smirnov sup-distance between the empirical CDF of a tail
/// sample and the fitted Pareto CDF F(x) = 1 - (xm/x)^beta. Both one-sided
/// gaps are taken at every jump of the empirical step function.
inline double ks_distance(const Sample& s, const PowerLawTail& model) {
  if (model.xm() != s.xm()) {
    throw std::domain_error("ks_distance: model.xm must equal sample xm");
  }
  const std::size_t n = s.size();
  const double nn = static_cast<double>(n);
  const double beta = model.beta();
  const double log_xm = std::log(model.xm());
  double d = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = s.values()[i - 1];
    const double model_cdf = 1.0 - std::exp(beta * (log_xm - std::log(x)));
    const double hi = static_cast<double>(i) / nn - model_cdf;
    const double lo = model_cdf - static_cast<double>(i - 1) / nn;
    d = std::max(d, std::max(std::abs(hi), std::abs(lo)));
  }
  return d;
}

struct CutoffCandidate {
  double xm;
  double ks;
  double beta_hat;
};

/// Result of the KS-minimizing cutoff scan. xm_hat is always one of the
/// scanned candidates, and the fitted beta recorded per candidate is the raw
/// MLE on that candidate's tail subsample.
struct CutoffScanResult {
  double xm_hat = 0.0;
  double ks_at_min = 0.0;
  std::size_t tail_count = 0;
  std::vector<CutoffCandidate> scan;
};

/// Estimate the cutoff by scanning every unique sample value v that leaves
/// at least min_tail points strictly above it: fit beta by raw MLE on
/// {x > v}, compute the KS distance of that fit, and keep the candidate with
/// the smallest distance (ties resolved to the smallest candidate).
inline CutoffScanResult scan_cutoff(const std::vector<double>& raw,
                                    std::size_t min_tail = 10) {
  if (min_tail < 1) {
    throw std::invalid_argument("scan_cutoff: min_tail must be >= 1");
  }
  if (raw.size() < min_tail) {
    throw std::invalid_argument("scan_cutoff: fewer than min_tail points");
  }
  std::vector<double> xs(raw);
  for (double v : xs) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw std::domain_error("scan_cutoff: values must be finite and > 0");
    }
  }
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();

  std::vector<double> log_x(n);
  for (std::size_t i = 0; i < n; ++i) log_x[i] = std::log(xs[i]);
  // suffix_log_sum[i] = sum of log_x[i..n)
  std::vector<double> suffix_log_sum(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    suffix_log_sum[i] = suffix_log_sum[i + 1] + log_x[i];
  }

  CutoffScanResult result;
  bool found = false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (xs[i + 1] == xs[i]) continue;  // candidate is the last of a value run
    const std::size_t m = n - i - 1;
    if (m < min_tail) break;
    const double v = xs[i];
    const double log_v = log_x[i];
    const double beta =
        static_cast<double>(m) /
        (suffix_log_sum[i + 1] - static_cast<double>(m) * log_v);
    const double mm = static_cast<double>(m);
    double d = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
      const double model_cdf = 1.0 - std::exp(beta * (log_v - log_x[i + k]));
      const double hi = static_cast<double>(k) / mm - model_cdf;
      const double lo = model_cdf - static_cast<double>(k - 1) / mm;
      d = std::max(d, std::max(std::abs(hi), std::abs(lo)));
    }
    result.scan.push_back({v, d, beta});
    if (!found || d < result.ks_at_min) {
      found = true;
      result.xm_hat = v;
      result.ks_at_min = d;
      result.tail_count = m;
    }
  }
  if (!found) {
    throw std::invalid_argument(
        "scan_cutoff: no candidate leaves min_tail points above it");
  }
  return result;
}

}  // namespace powerlaw
