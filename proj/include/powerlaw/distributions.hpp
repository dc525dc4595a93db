#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "powerlaw/random.hpp"

namespace powerlaw {

namespace detail {

inline void require_finite_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw std::domain_error(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace detail

/// Power-law tail model P(X > x) = alpha / x^beta for x > xm.
///
/// A full Pareto distribution is the special case alpha = xm^beta, where
/// the tail is exactly 1 at the cutoff. In general alpha equals the tail
/// probability at xm times xm^beta, so alpha / xm^beta must lie in (0, 1].
class PowerLawTail {
 public:
  PowerLawTail(double alpha, double beta, double xm)
      : alpha_(alpha), beta_(beta), xm_(xm) {
    detail::require_finite_positive(alpha, "PowerLawTail: alpha");
    detail::require_finite_positive(beta, "PowerLawTail: beta");
    detail::require_finite_positive(xm, "PowerLawTail: xm");
    if (tail_at_cutoff() > 1.0 + 1e-12) {
      throw std::domain_error(
          "PowerLawTail: alpha / xm^beta must be a probability in (0, 1]");
    }
  }

  /// Full Pareto with tail (xm / x)^beta, i.e. alpha = xm^beta.
  static PowerLawTail pareto(double xm, double beta) {
    detail::require_finite_positive(xm, "PowerLawTail: xm");
    detail::require_finite_positive(beta, "PowerLawTail: beta");
    return PowerLawTail(std::pow(xm, beta), beta, xm);
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double xm() const { return xm_; }

  /// Tail probability at the cutoff, alpha / xm^beta.
  double tail_at_cutoff() const { return alpha_ / std::pow(xm_, beta_); }

  bool is_full_pareto() const {
    return std::abs(tail_at_cutoff() - 1.0) <= 1e-9;
  }

 private:
  double alpha_;
  double beta_;
  double xm_;
};

/// Exponential-then-power-law piecewise tail:
///   P(X > x) = exp(-beta x / xm)            for 0 < x <= xm
///   P(X > x) = exp(-beta) (xm / x)^beta     for x > xm
/// Continuous at xm with value exp(-beta).
class PiecewiseParams {
 public:
  PiecewiseParams(double xm, double beta) : xm_(xm), beta_(beta) {
    detail::require_finite_positive(xm, "PiecewiseParams: xm");
    detail::require_finite_positive(beta, "PiecewiseParams: beta");
  }

  double xm() const { return xm_; }
  double beta() const { return beta_; }

 private:
  double xm_;
  double beta_;
};

/// Lomax (Pareto type II) tail P(X > x) = (1 + x/lambda)^(-beta), x >= 0.
/// Regularly varying but nowhere exactly Pareto.
class LomaxParams {
 public:
  LomaxParams(double lambda, double beta) : lambda_(lambda), beta_(beta) {
    detail::require_finite_positive(lambda, "LomaxParams: lambda");
    detail::require_finite_positive(beta, "LomaxParams: beta");
  }

  double lambda() const { return lambda_; }
  double beta() const { return beta_; }

 private:
  double lambda_;
  double beta_;
};

/// Tail P(X > x) = alpha / x^beta, defined for x >= xm.
inline double pareto_tail(const PowerLawTail& p, double x) {
  if (!(x >= p.xm())) {
    throw std::domain_error("pareto_tail: x must be >= xm");
  }
  return p.alpha() * std::pow(x, -p.beta());
}

/// Density beta alpha / x^(beta+1), the negative derivative of the tail.
inline double pareto_density(const PowerLawTail& p, double x) {
  if (!(x >= p.xm())) {
    throw std::domain_error("pareto_density: x must be >= xm");
  }
  return p.beta() * p.alpha() * std::pow(x, -(p.beta() + 1.0));
}

/// Inverse of the full-Pareto tail: x such that (xm/x)^beta = u.
inline double pareto_inverse_tail(const PowerLawTail& p, double u) {
  if (!p.is_full_pareto()) {
    throw std::domain_error(
        "pareto_inverse_tail: requires a full Pareto (alpha = xm^beta)");
  }
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::domain_error("pareto_inverse_tail: u must be in (0, 1]");
  }
  return p.xm() * std::pow(u, -1.0 / p.beta());
}

inline double piecewise_tail(const PiecewiseParams& p, double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("piecewise_tail: x must be > 0");
  }
  if (x <= p.xm()) {
    return std::exp(-p.beta() * x / p.xm());
  }
  return std::exp(-p.beta()) * std::pow(p.xm() / x, p.beta());
}

inline double piecewise_inverse_tail(const PiecewiseParams& p, double u) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::domain_error("piecewise_inverse_tail: u must be in (0, 1]");
  }
  const double boundary = std::exp(-p.beta());
  if (u >= boundary) {
    return -(p.xm() / p.beta()) * std::log(u);  // exponential branch, (0, xm]
  }
  return p.xm() * std::pow(boundary / u, 1.0 / p.beta());  // power-law branch
}

inline double lomax_tail(const LomaxParams& p, double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("lomax_tail: x must be >= 0");
  }
  return std::pow(1.0 + x / p.lambda(), -p.beta());
}

inline double lomax_inverse_tail(const LomaxParams& p, double u) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw std::domain_error("lomax_inverse_tail: u must be in (0, 1]");
  }
  return p.lambda() * (std::pow(u, -1.0 / p.beta()) - 1.0);
}

namespace detail {

template <typename InverseTail>
std::vector<double> sample_inverse_transform(std::size_t n, std::uint64_t seed,
                                             InverseTail&& inverse) {
  if (n == 0) throw std::invalid_argument("sample: n must be >= 1");
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(inverse(rng.uniform_unit()));
  }
  return out;
}

}  // namespace detail

/// n i.i.d. full-Pareto draws by inverse transform. Identical (dist, n, seed)
/// always produce identical output.
inline std::vector<double> sample(const PowerLawTail& p, std::size_t n,
                                  std::uint64_t seed) {
  if (!p.is_full_pareto()) {
    throw std::domain_error("sample: Pareto sampling requires alpha = xm^beta");
  }
  return detail::sample_inverse_transform(
      n, seed, [&p](double u) { return pareto_inverse_tail(p, u); });
}

inline std::vector<double> sample(const PiecewiseParams& p, std::size_t n,
                                  std::uint64_t seed) {
  return detail::sample_inverse_transform(
      n, seed, [&p](double u) { return piecewise_inverse_tail(p, u); });
}

inline std::vector<double> sample(const LomaxParams& p, std::size_t n,
                                  std::uint64_t seed) {
  return detail::sample_inverse_transform(
      n, seed, [&p](double u) { return lomax_inverse_tail(p, u); });
}

/// Closed set of sampleable distributions, mainly for the CLI.
using AnyDistribution = std::variant<PowerLawTail, PiecewiseParams, LomaxParams>;

inline std::vector<double> sample(const AnyDistribution& dist, std::size_t n,
                                  std::uint64_t seed) {
  return std::visit([&](const auto& p) { return sample(p, n, seed); }, dist);
}

}  // namespace powerlaw
