#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace powerlaw {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty input");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

/// Unbiased sample variance (divisor n - 1).
inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("sample_variance: need n >= 2");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
inline LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line: need two equal-length series, n >= 2");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("fit_line: degenerate design (constant x)");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F1(x) - F2(x)|.
/// Ties within and across samples are handled by advancing both empirical
/// CDFs past each distinct value before taking the gap.
inline double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("two_sample_ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

/// Rejection threshold for the two-sample KS test at the given significance,
/// using the asymptotic critical value c(alpha) = sqrt(-ln(alpha/2) / 2).
inline double two_sample_ks_threshold(std::size_t n1, std::size_t n2,
                                      double significance) {
  if (n1 == 0 || n2 == 0)
    throw std::invalid_argument("two_sample_ks_threshold: empty sample");
  if (!(significance > 0.0 && significance < 1.0))
    throw std::domain_error("two_sample_ks_threshold: significance in (0,1)");
  const double c = std::sqrt(-std::log(significance / 2.0) / 2.0);
  const double m = static_cast<double>(n1);
  const double n = static_cast<double>(n2);
  return c * std::sqrt((m + n) / (m * n));
}

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Returns the midpoint of the final bracket, located to absolute tolerance
/// `tol` in the argument.
template <typename F>
double golden_section_minimize(F&& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_minimize: lo < hi required");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_section_minimize: tol > 0 required");
  constexpr double kInvPhi = 0.6180339887498949;  // 1/phi
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace powerlaw
