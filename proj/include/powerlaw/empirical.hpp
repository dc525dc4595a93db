#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "powerlaw/distributions.hpp"

namespace powerlaw {

/// An ordered i.i.d. sample from the tail region: every value strictly
/// exceeds the cutoff xm, and storage is ascending.
class Sample {
 public:
  Sample(std::vector<double> values, double xm)
      : values_(std::move(values)), xm_(xm) {
    detail::require_finite_positive(xm, "Sample: xm");
    if (values_.empty()) throw std::invalid_argument("Sample: empty input");
    for (double v : values_) {
      if (!(std::isfinite(v) && v > xm_)) {
        throw std::domain_error("Sample: all values must be finite and > xm");
      }
    }
    std::sort(values_.begin(), values_.end());
  }

  const std::vector<double>& values() const { return values_; }
  double xm() const { return xm_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
  double xm_;
};

/// Sort a raw tail sample ascending and bind it to its cutoff.
inline Sample order_sample(std::vector<double> raw, double xm) {
  return Sample(std::move(raw), xm);
}

struct TailPoint {
  double x;
  double tail;
};

/// The empirical tail P_n(X >= x) evaluated at the ordered sample points.
/// At the i-th smallest point (1-based) the value is (n - i + 1) / n: the
/// ">=" convention makes the minimum 1/n, never 0, so logs of the tail are
/// always finite.
struct TailCurve {
  std::vector<TailPoint> points;
  std::size_t n = 0;
};

inline TailCurve empirical_tail(const Sample& s) {
  const std::size_t n = s.size();
  TailCurve curve;
  curve.n = n;
  curve.points.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    curve.points.push_back(
        {s.values()[i - 1],
         static_cast<double>(n - i + 1) / static_cast<double>(n)});
  }
  return curve;
}

struct TailResidual {
  double x;
  double residual;       // empirical tail minus model tail
  double log_residual;   // log(1 + residual / model tail)
  double model_variance; // (1/n) p (1 - p) with p the model tail
};

/// Diagnostic error model of the empirical tail against a power-law model.
/// Used only in tests and diagnostics, never inside estimation.
struct TailErrorDiagnostics {
  std::vector<TailResidual> points;
  std::size_t n = 0;
};

inline TailErrorDiagnostics log_residuals(const Sample& s,
                                          const PowerLawTail& model) {
  if (model.xm() != s.xm()) {
    throw std::domain_error("log_residuals: model.xm must equal sample xm");
  }
  const TailCurve curve = empirical_tail(s);
  const double n = static_cast<double>(s.size());
  TailErrorDiagnostics diag;
  diag.n = s.size();
  diag.points.reserve(s.size());
  for (const TailPoint& pt : curve.points) {
    const double p = pareto_tail(model, pt.x);
    const double eps = pt.tail - p;
    TailResidual r;
    r.x = pt.x;
    r.residual = eps;
    r.log_residual = std::log1p(eps / p);
    r.model_variance = p * (1.0 - p) / n;
    diag.points.push_back(r);
  }
  return diag;
}

}  // namespace powerlaw
