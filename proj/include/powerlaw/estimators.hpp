#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "powerlaw/empirical.hpp"

namespace powerlaw {

enum class EstimatorId { Mle1, Mle2, Ols1, Ols2 };

inline std::string_view to_string(EstimatorId id) {
  switch (id) {
    case EstimatorId::Mle1: return "MLE1";
    case EstimatorId::Mle2: return "MLE2";
    case EstimatorId::Ols1: return "OLS1";
    case EstimatorId::Ols2: return "OLS2";
  }
  throw std::logic_error("to_string: bad EstimatorId");
}

inline std::optional<EstimatorId> estimator_from_string(std::string_view s) {
  if (s == "MLE1") return EstimatorId::Mle1;
  if (s == "MLE2") return EstimatorId::Mle2;
  if (s == "OLS1") return EstimatorId::Ols1;
  if (s == "OLS2") return EstimatorId::Ols2;
  return std::nullopt;
}

/// Point estimate of the tail exponent plus the metadata needed to audit it.
/// correction is 1 for the raw estimators, (n-1)/n for MLE2, and 1/r_n for
/// OLS2; gamma is set only for OLS2.
struct EstimateReport {
  EstimatorId estimator;
  double beta_hat = 0.0;
  std::size_t n = 0;
  double correction = 1.0;
  std::optional<double> gamma;
};

/// Sigmoid bias-correction parameter; the default 1.6 comes from a
/// nonlinear least-squares fit and can be refit with fit_gamma.
struct CorrectionParams {
  double gamma = 1.6;
};

namespace detail {

// Sum of log(x_i / xm) over the sample; strictly positive since x_i > xm.
inline double log_ratio_sum(const Sample& s) {
  double sum = 0.0;
  for (double v : s.values()) sum += std::log(v / s.xm());
  return sum;
}

// r_n on a real-valued n; shared by sigmoid_factor and the gamma fit.
inline double sigmoid_factor_real(double n, double gamma) {
  if (!(n >= 2.0)) throw std::invalid_argument("sigmoid factor: need n >= 2");
  if (!(std::isfinite(gamma) && gamma > 0.0)) {
    throw std::domain_error("sigmoid factor: gamma must be finite and > 0");
  }
  const double arg = std::numbers::e - std::pow(std::log(n), gamma) / n;
  if (!(arg > 1.0)) {
    throw std::domain_error("sigmoid factor: correction undefined (r_n <= 0)");
  }
  return std::log(arg);
}

}  // namespace detail

/// Raw maximum-likelihood (Hill) estimator: 1 / mean of log(x_i / xm).
inline EstimateReport mle_raw(const Sample& s) {
  const double sum = detail::log_ratio_sum(s);
  if (!(sum > 0.0)) {
    throw std::domain_error("mle_raw: undefined estimate (log-ratio sum is 0)");
  }
  EstimateReport r;
  r.estimator = EstimatorId::Mle1;
  r.beta_hat = static_cast<double>(s.size()) / sum;
  r.n = s.size();
  r.correction = 1.0;
  return r;
}

/// Unbiased MLE, the (n-1)/n rescaling of the raw estimator.
inline EstimateReport mle_unbiased(const Sample& s) {
  if (s.size() < 2) {
    throw std::invalid_argument("mle_unbiased: need n >= 2");
  }
  EstimateReport r = mle_raw(s);
  const double correction =
      static_cast<double>(s.size() - 1) / static_cast<double>(s.size());
  r.estimator = EstimatorId::Mle2;
  r.beta_hat *= correction;
  r.correction = correction;
  return r;
}

/// Least-squares estimator on the logged empirical tail: the through-origin
/// slope of -log P_n(X >= x_(i)) against log(x_(i) / xm). The natural log is
/// used throughout; any base would give the same value after cancellation.
inline EstimateReport ols_raw(const Sample& s) {
  const std::size_t n = s.size();
  if (n < 2) {
    throw std::invalid_argument("ols_raw: need n >= 2");
  }
  const double log_n = std::log(static_cast<double>(n));
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double k = std::log(s.values()[i - 1] / s.xm());
    // log(1 / tail_i) = log n - log(n - i + 1), computed as a difference to
    // limit cancellation near the largest order statistics.
    const double w = log_n - std::log(static_cast<double>(n - i + 1));
    num += k * w;
    den += k * k;
  }
  if (!(den > 0.0)) {
    throw std::domain_error("ols_raw: degenerate design (all log-ratios 0)");
  }
  EstimateReport r;
  r.estimator = EstimatorId::Ols1;
  r.beta_hat = num / den;
  r.n = n;
  r.correction = 1.0;
  return r;
}

/// Sigmoid factor r_n = log(e - (log n)^gamma / n): the multiplicative bias
/// of the mean of the raw least-squares estimator. Lies in (0, 1) for n >= 2
/// at the default gamma and tends to 1 as n grows.
inline double sigmoid_factor(std::size_t n, CorrectionParams params = {}) {
  if (n < 2) throw std::invalid_argument("sigmoid_factor: need n >= 2");
  return detail::sigmoid_factor_real(static_cast<double>(n), params.gamma);
}

/// Approximately unbiased least-squares estimator: ols_raw / r_n.
inline EstimateReport ols_corrected(const Sample& s, CorrectionParams params = {}) {
  EstimateReport r = ols_raw(s);
  const double rn = sigmoid_factor(s.size(), params);
  r.estimator = EstimatorId::Ols2;
  r.beta_hat /= rn;
  r.correction = 1.0 / rn;
  r.gamma = params.gamma;
  return r;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// One-standard-deviation band of the asymptotically normal MLE,
/// (beta - beta/sqrt(n), beta + beta/sqrt(n)); covers ~68% of estimates.
inline Interval mle_sd_interval(double beta, std::size_t n) {
  if (!(std::isfinite(beta) && beta > 0.0)) {
    throw std::domain_error("mle_sd_interval: beta must be > 0");
  }
  if (n < 1) throw std::invalid_argument("mle_sd_interval: need n >= 1");
  const double half = beta / std::sqrt(static_cast<double>(n));
  return Interval{beta - half, beta + half};
}

/// Dispatch on the estimator id.
inline EstimateReport estimate(const Sample& s, EstimatorId id,
                               CorrectionParams params = {}) {
  switch (id) {
    case EstimatorId::Mle1: return mle_raw(s);
    case EstimatorId::Mle2: return mle_unbiased(s);
    case EstimatorId::Ols1: return ols_raw(s);
    case EstimatorId::Ols2: return ols_corrected(s, params);
  }
  throw std::logic_error("estimate: bad EstimatorId");
}

}  // namespace powerlaw
