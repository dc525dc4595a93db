#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "powerlaw/io.hpp"
#include "powerlaw/montecarlo.hpp"

using namespace powerlaw;

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ExperimentGrid small_grid() {
  ExperimentGrid g;
  g.beta_true = 1.5;
  g.n_grid = {10, 25, 50};
  g.replications = 200;
  g.seed = 99;
  g.estimators = {EstimatorId::Mle1, EstimatorId::Mle2, EstimatorId::Ols1,
                  EstimatorId::Ols2};
  return g;
}

}  // namespace

TEST_CASE("grid validation") {
  ExperimentGrid g = small_grid();
  g.n_grid = {};
  CHECK_THROWS_AS(validate(g), std::invalid_argument);
  g = small_grid();
  g.n_grid = {10, 10};
  CHECK_THROWS_AS(validate(g), std::invalid_argument);
  g = small_grid();
  g.n_grid = {1, 10};
  CHECK_THROWS_AS(validate(g), std::invalid_argument);
  g = small_grid();
  g.replications = 1;
  CHECK_THROWS_AS(validate(g), std::invalid_argument);
  g = small_grid();
  g.estimators = {};
  CHECK_THROWS_AS(validate(g), std::invalid_argument);
  g = small_grid();
  g.beta_true = -1.0;
  CHECK_THROWS_AS(validate(g), std::domain_error);
  g = small_grid();
  g.gamma = 0.0;
  CHECK_THROWS_AS(validate(g), std::domain_error);
}

TEST_CASE("smallest legal run is finite and deterministic") {
  ExperimentGrid g;
  g.beta_true = 1.5;
  g.n_grid = {10};
  g.replications = 2;
  g.seed = 7;
  g.estimators = {EstimatorId::Mle2, EstimatorId::Ols2};
  const GridStats a = run_grid(g);
  const GridStats b = run_grid(g);
  REQUIRE(a.cells.size() == 2);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(std::isfinite(a.cells[i].mean));
    CHECK(std::isfinite(a.cells[i].variance));
    CHECK(a.cells[i].mean == b.cells[i].mean);
    CHECK(a.cells[i].variance == b.cells[i].variance);
  }
  CHECK(a.estimates == b.estimates);
}

TEST_CASE("parallel schedule does not change the output") {
  const ExperimentGrid g = small_grid();
  const GridStats serial = run_grid(g, 1);
  const GridStats par2 = run_grid(g, 2);
  const GridStats par7 = run_grid(g, 7);
  CHECK(serial.estimates == par2.estimates);
  CHECK(serial.estimates == par7.estimates);
  REQUIRE(serial.cells.size() == par2.cells.size());
  for (std::size_t i = 0; i < serial.cells.size(); ++i) {
    CHECK(serial.cells[i].mean == par2.cells[i].mean);
    CHECK(serial.cells[i].variance == par7.cells[i].variance);
  }
  REQUIRE(serial.closer_probability.size() == par2.closer_probability.size());
  for (std::size_t i = 0; i < serial.closer_probability.size(); ++i) {
    CHECK(serial.closer_probability[i].probability ==
          par2.closer_probability[i].probability);
  }
}

TEST_CASE("grid cells reproduce the public estimators bit for bit") {
  const ExperimentGrid g = small_grid();
  const GridStats stats = run_grid(g);
  const PowerLawTail pareto = PowerLawTail::pareto(1.0, g.beta_true);
  for (std::size_t ni = 0; ni < g.n_grid.size(); ++ni) {
    const std::size_t n = g.n_grid[ni];
    for (std::size_t rep : {std::size_t(0), std::size_t(57), std::size_t(199)}) {
      const Sample s = order_sample(
          sample(pareto, n, derive_seed(g.seed, n, rep)), 1.0);
      CHECK(stats.estimates_for(ni, EstimatorId::Mle1)[rep] ==
            mle_raw(s).beta_hat);
      CHECK(stats.estimates_for(ni, EstimatorId::Mle2)[rep] ==
            mle_unbiased(s).beta_hat);
      CHECK(stats.estimates_for(ni, EstimatorId::Ols1)[rep] ==
            ols_raw(s).beta_hat);
      CHECK(stats.estimates_for(ni, EstimatorId::Ols2)[rep] ==
            ols_corrected(s, {g.gamma}).beta_hat);
    }
  }
}

TEST_CASE("corrected and raw least-squares cells are tied by the sigmoid") {
  const ExperimentGrid g = small_grid();
  const GridStats stats = run_grid(g);
  for (std::size_t ni = 0; ni < g.n_grid.size(); ++ni) {
    const double rn = sigmoid_factor(g.n_grid[ni], {g.gamma});
    const GridCell* ols1 = nullptr;
    const GridCell* ols2 = nullptr;
    for (const GridCell& c : stats.cells) {
      if (c.n != g.n_grid[ni]) continue;
      if (c.estimator == EstimatorId::Ols1) ols1 = &c;
      if (c.estimator == EstimatorId::Ols2) ols2 = &c;
    }
    REQUIRE(ols1 != nullptr);
    REQUIRE(ols2 != nullptr);
    CHECK_THAT(ols2->mean, WithinRel(ols1->mean / rn, 1e-12));
    CHECK_THAT(ols2->variance, WithinRel(ols1->variance / (rn * rn), 1e-12));
  }
}

TEST_CASE("closer probability appears only with the MLE2/OLS2 pair") {
  ExperimentGrid g = small_grid();
  const GridStats full = run_grid(g);
  REQUIRE(full.closer_probability.size() == g.n_grid.size());
  for (const CloserPoint& p : full.closer_probability) {
    CHECK(p.probability >= 0.0);
    CHECK(p.probability <= 1.0);
  }
  g.estimators = {EstimatorId::Ols1, EstimatorId::Ols2};
  CHECK(run_grid(g).closer_probability.empty());
}

TEST_CASE("unbiased MLE cell means stay within three standard errors") {
  ExperimentGrid g;
  g.beta_true = 1.5;
  for (std::size_t n = 50; n <= 1000; n += 50) g.n_grid.push_back(n);
  g.replications = 1000;
  g.seed = 4242;
  g.estimators = {EstimatorId::Mle2};
  const GridStats stats = run_grid(g);
  REQUIRE(stats.cells.size() == g.n_grid.size());
  for (const GridCell& c : stats.cells) {
    CHECK_THAT(c.mean, WithinAbs(1.5, 3.0 * c.se_mean));
  }
}

TEST_CASE("gamma fit recovers the generating gamma on noiseless curves") {
  for (double gamma : {1.6, 1.0}) {
    std::vector<std::pair<double, double>> curve;
    for (std::size_t n = 10; n <= 1000; n += 10) {
      curve.emplace_back(static_cast<double>(n),
                         1.5 * sigmoid_factor(n, {gamma}));
    }
    CHECK_THAT(fit_gamma(curve, 1.5, {0.5, 3.0}), WithinAbs(gamma, 1e-3));
  }
}

TEST_CASE("gamma fit guards") {
  std::vector<std::pair<double, double>> tiny{{10.0, 1.0}, {20.0, 1.1}};
  CHECK_THROWS_AS(fit_gamma(tiny, 1.5, {0.5, 3.0}), std::invalid_argument);
  std::vector<std::pair<double, double>> curve;
  for (std::size_t n = 3; n <= 30; n += 3) {
    curve.emplace_back(static_cast<double>(n), 1.0);
  }
  CHECK_THROWS_AS(fit_gamma(curve, 1.5, {3.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(fit_gamma(curve, -1.0, {0.5, 3.0}), std::domain_error);
  // gamma large enough to push r_n below zero for n=3 in the curve
  CHECK_THROWS_AS(fit_gamma(curve, 1.5, {0.5, 40.0}), std::domain_error);
}

TEST_CASE("variance slope on synthetic decay curves") {
  std::vector<std::pair<double, double>> inv_n, inv_n2;
  for (std::size_t n = 50; n <= 1000; n += 50) {
    inv_n.emplace_back(static_cast<double>(n), 3.7 / static_cast<double>(n));
    inv_n2.emplace_back(static_cast<double>(n),
                        0.4 / static_cast<double>(n * n));
  }
  CHECK_THAT(variance_slope(inv_n), WithinAbs(-1.0, 1e-10));
  CHECK_THAT(variance_slope(inv_n2), WithinAbs(-2.0, 1e-10));
  CHECK_THROWS_AS(variance_slope({{10.0, 1.0}, {20.0, 0.5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      variance_slope({{10.0, 1.0}, {20.0, 0.0}, {30.0, 0.1}}),
      std::domain_error);
}

TEST_CASE("grid config loads from JSON mirroring the fields") {
  const auto j = nlohmann::json::parse(R"({
    "beta_true": 1.5,
    "n_grid": [10, 20, 30],
    "replications": 100,
    "seed": 12345,
    "estimators": ["MLE2", "OLS2"],
    "gamma": 1.7
  })");
  const ExperimentGrid g = grid_from_json(j);
  CHECK(g.beta_true == 1.5);
  CHECK(g.n_grid == std::vector<std::size_t>{10, 20, 30});
  CHECK(g.replications == 100);
  CHECK(g.seed == 12345);
  CHECK(g.gamma == 1.7);
  REQUIRE(g.estimators.size() == 2);
  CHECK(g.estimators[0] == EstimatorId::Mle2);

  auto missing = j;
  missing.erase("beta_true");
  CHECK_THROWS_AS(grid_from_json(missing), std::invalid_argument);
  auto bad_est = j;
  bad_est["estimators"] = {"MLE9"};
  CHECK_THROWS_AS(grid_from_json(bad_est), std::invalid_argument);
  auto defaults = j;
  defaults.erase("seed");
  defaults.erase("gamma");
  CHECK(grid_from_json(defaults).seed == kDefaultSeed);
  CHECK(grid_from_json(defaults).gamma == 1.6);
}

TEST_CASE("grid stats serialize with the documented headers") {
  ExperimentGrid g;
  g.beta_true = 1.5;
  g.n_grid = {10};
  g.replications = 5;
  g.seed = 3;
  g.estimators = {EstimatorId::Mle2, EstimatorId::Ols2};
  const GridStats stats = run_grid(g);
  std::ostringstream stats_os;
  write_grid_stats_csv(stats_os, stats);
  CHECK(stats_os.str().rfind("n,estimator,mean,variance,se_mean\n", 0) == 0);
  CHECK(stats_os.str().find("10,MLE2,") != std::string::npos);
  std::ostringstream closer_os;
  write_closer_csv(closer_os, stats);
  CHECK(closer_os.str().rfind("n,closer_probability\n", 0) == 0);
}
