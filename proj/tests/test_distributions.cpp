#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "powerlaw/distributions.hpp"
#include "powerlaw/random.hpp"
#include "powerlaw/stats.hpp"

using namespace powerlaw;

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("pareto tail values") {
  const auto p = PowerLawTail::pareto(1.0, 1.5);
  CHECK(pareto_tail(p, 1.0) == 1.0);
  CHECK_THAT(pareto_tail(p, 4.0), WithinRel(0.125, 1e-14));
  const auto q = PowerLawTail::pareto(1.0, 2.0);
  CHECK_THAT(pareto_tail(q, 10.0), WithinRel(0.01, 1e-14));
  CHECK_THROWS_AS(pareto_tail(p, 0.5), std::domain_error);
}

TEST_CASE("pareto tail of a partial power law") {
  // alpha = P(X > xm) xm^beta with tail probability 1/2 at the cutoff.
  const PowerLawTail p(0.5 * std::pow(2.0, 1.5), 1.5, 2.0);
  CHECK_THAT(pareto_tail(p, 2.0), WithinRel(0.5, 1e-14));
  CHECK(!p.is_full_pareto());
  // tail probability at the cutoff above 1 is not a distribution
  CHECK_THROWS_AS(PowerLawTail(2.0 * std::pow(2.0, 1.5), 1.5, 2.0),
                  std::domain_error);
}

TEST_CASE("pareto inverse tail") {
  const auto p = PowerLawTail::pareto(1.0, 1.5);
  CHECK(pareto_inverse_tail(p, 1.0) == 1.0);
  CHECK_THAT(pareto_inverse_tail(p, 0.25),
             WithinRel(2.5198420997897464, 1e-14));
  const auto q = PowerLawTail::pareto(20.0, 1.5);
  CHECK_THAT(pareto_inverse_tail(q, 0.5), WithinRel(31.748021039363989, 1e-14));
  CHECK_THROWS_AS(pareto_inverse_tail(p, 0.0), std::domain_error);
  CHECK_THROWS_AS(pareto_inverse_tail(p, 1.5), std::domain_error);
  const PowerLawTail partial(0.5, 1.5, 1.0);
  CHECK_THROWS_AS(pareto_inverse_tail(partial, 0.5), std::domain_error);
}

TEST_CASE("piecewise tail values") {
  const PiecewiseParams p(20.0, 1.5);
  CHECK_THAT(piecewise_tail(p, 20.0), WithinRel(0.22313016014842982, 1e-14));
  CHECK_THAT(piecewise_tail(p, 1e-12), WithinAbs(1.0, 1e-12));
  CHECK_THAT(piecewise_tail(p, 40.0), WithinRel(0.07888842466409754, 1e-14));
  CHECK_THROWS_AS(piecewise_tail(p, 0.0), std::domain_error);
  CHECK_THROWS_AS(piecewise_tail(p, -1.0), std::domain_error);
}

TEST_CASE("piecewise branches agree at the cutoff") {
  const PiecewiseParams p(20.0, 1.5);
  const double left = std::exp(-p.beta() * p.xm() / p.xm());
  const double right = std::exp(-p.beta()) * std::pow(p.xm() / p.xm(), p.beta());
  CHECK_THAT(left, WithinRel(right, 1e-14));
  const double just_below = piecewise_tail(p, std::nextafter(20.0, 0.0));
  const double just_above = piecewise_tail(p, std::nextafter(20.0, 1e9));
  CHECK_THAT(just_below, WithinRel(just_above, 1e-14));
}

TEST_CASE("piecewise inverse tail") {
  const PiecewiseParams p(20.0, 1.5);
  CHECK_THAT(piecewise_inverse_tail(p, std::exp(-1.5)), WithinRel(20.0, 1e-13));
  CHECK_THAT(piecewise_inverse_tail(p, 0.5), WithinRel(9.241962407465937, 1e-14));
  CHECK_THAT(piecewise_inverse_tail(p, 0.1), WithinRel(34.150902125141517, 1e-13));
  CHECK_THROWS_AS(piecewise_inverse_tail(p, 0.0), std::domain_error);
  CHECK_THROWS_AS(piecewise_inverse_tail(p, 2.0), std::domain_error);
}

TEST_CASE("lomax tail and inverse") {
  const LomaxParams p(20.0, 1.5);
  CHECK(lomax_tail(p, 0.0) == 1.0);
  CHECK_THAT(lomax_tail(p, 20.0), WithinRel(0.35355339059327373, 1e-14));
  CHECK_THAT(lomax_tail(p, 60.0), WithinRel(0.125, 1e-14));
  CHECK_THROWS_AS(lomax_tail(p, -0.1), std::domain_error);
  CHECK(lomax_inverse_tail(p, 1.0) == 0.0);
  CHECK_THAT(lomax_inverse_tail(p, 0.5), WithinRel(11.748021039363989, 1e-14));
  CHECK_THAT(lomax_inverse_tail(p, 0.125), WithinRel(60.0, 1e-14));
  CHECK_THROWS_AS(lomax_inverse_tail(p, 0.0), std::domain_error);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PowerLawTail(1.0, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(PowerLawTail(-1.0, 1.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(PowerLawTail::pareto(0.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(PiecewiseParams(20.0, -1.5), std::domain_error);
  CHECK_THROWS_AS(LomaxParams(0.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(sample(PowerLawTail::pareto(1.0, 1.5), 0, 1),
                  std::invalid_argument);
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto p = PowerLawTail::pareto(1.0, 1.5);
  const auto a = sample(p, 5, 42);
  const auto b = sample(p, 5, 42);
  CHECK(a == b);
  const auto c = sample(p, 5, 43);
  CHECK(a != c);
}

TEST_CASE("pareto draws match the analytic quantile") {
  const auto p = PowerLawTail::pareto(1.0, 1.5);
  const auto xs = sample(p, 100000, 7);
  const double q = pareto_inverse_tail(p, 0.25);  // tail prob 0.25 beyond q
  const auto above = static_cast<double>(
      std::count_if(xs.begin(), xs.end(), [&](double x) { return x > q; }));
  CHECK_THAT(above / 100000.0, WithinAbs(0.25, 0.005));
}

TEST_CASE("piecewise draws put the expected count past the cutoff") {
  const PiecewiseParams p(20.0, 1.5);
  const auto xs = sample(p, 10000, 11);
  const auto above = std::count_if(xs.begin(), xs.end(),
                                   [](double x) { return x > 20.0; });
  // expectation e^{-1.5} * 1e4 = 2231.3
  CHECK(above >= 2231 - 150);
  CHECK(above <= 2231 + 150);
}

TEST_CASE("tail round-trips through the inverse on a log-spaced grid") {
  const auto pareto = PowerLawTail::pareto(1.0, 1.5);
  const PiecewiseParams piecewise(20.0, 1.5);
  const LomaxParams lomax(20.0, 1.5);
  for (int k = 0; k <= 90; ++k) {
    const double u = std::pow(10.0, -9.0 + 0.1 * k);  // (1e-9, 1]
    CHECK_THAT(pareto_tail(pareto, pareto_inverse_tail(pareto, u)),
               WithinRel(u, 1e-12));
    CHECK_THAT(lomax_tail(lomax, lomax_inverse_tail(lomax, u)),
               WithinRel(u, 1e-12));
    if (u < 1.0) {
      CHECK_THAT(piecewise_tail(piecewise, piecewise_inverse_tail(piecewise, u)),
                 WithinRel(u, 1e-12));
    }
  }
  // u = 1 puts the piecewise inverse on the lower support boundary x = 0,
  // where the tail is defined only as a limit.
  CHECK(piecewise_inverse_tail(piecewise, 1.0) == 0.0);
  CHECK_THAT(piecewise_tail(piecewise, 1e-300), WithinRel(1.0, 1e-12));
}

TEST_CASE("tail functions are strictly decreasing") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const double xm = 0.5 + 40.0 * rng.uniform_unit();
    const double beta = 0.3 + 3.0 * rng.uniform_unit();
    const auto pareto = PowerLawTail::pareto(xm, beta);
    const PiecewiseParams piecewise(xm, beta);
    const LomaxParams lomax(xm, beta);
    std::vector<double> grid;
    for (int i = 0; i < 20; ++i) {
      grid.push_back(xm * (0.01 + 5.0 * rng.uniform_unit()));
    }
    std::sort(grid.begin(), grid.end());
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (grid[i] - grid[i - 1] < 1e-9 * grid[i]) continue;
      CHECK(piecewise_tail(piecewise, grid[i]) <
            piecewise_tail(piecewise, grid[i - 1]));
      CHECK(lomax_tail(lomax, grid[i]) < lomax_tail(lomax, grid[i - 1]));
      if (grid[i - 1] >= xm) {
        CHECK(pareto_tail(pareto, grid[i]) < pareto_tail(pareto, grid[i - 1]));
      }
    }
  }
}

TEST_CASE("piecewise tail beyond the cutoff is conditionally Pareto") {
  const PiecewiseParams p(20.0, 1.5);
  const auto xs = sample(p, 10000, 99);
  std::vector<double> beyond;
  for (double x : xs) {
    if (x > 20.0) beyond.push_back(x);
  }
  const auto direct = sample(PowerLawTail::pareto(20.0, 1.5), 2500, 100);
  const double d = two_sample_ks(beyond, direct);
  const double threshold = two_sample_ks_threshold(beyond.size(), direct.size(), 0.01);
  CHECK(d < threshold);
}
