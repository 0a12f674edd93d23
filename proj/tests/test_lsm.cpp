#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "quotnet/lsm.hpp"
#include "quotnet/quotient.hpp"
#include "quotnet/rng.hpp"
#include "quotnet/stats.hpp"
#include "test_util.hpp"

using namespace quotnet;

TEST_SUITE("lsm") {

TEST_CASE("simulate_template respects group structure") {
  SimulationSpec weak = SimulationSpec::weakly_identified();
  const SimulatedTemplate tpl = simulate_template(weak, 42);
  REQUIRE(tpl.positions.rows() == 120);
  CHECK(std::count(tpl.labels.begin(), tpl.labels.end(), 'L') == 48);
  CHECK(std::count(tpl.labels.begin(), tpl.labels.end(), 'B') == 24);
  CHECK(std::count(tpl.labels.begin(), tpl.labels.end(), 'R') == 48);

  // Group sample means stay inside the Gaussian concentration band.
  int row = 0;
  for (int g = 0; g < 3; ++g) {
    const int sz = weak.group_sizes[static_cast<std::size_t>(g)];
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (int i = 0; i < sz; ++i) mean += tpl.positions.row(row + i).transpose();
    mean /= static_cast<double>(sz);
    const double band = 4.0 * weak.group_sds[static_cast<std::size_t>(g)] / std::sqrt(static_cast<double>(sz));
    CHECK((mean - weak.group_means[static_cast<std::size_t>(g)]).cwiseAbs().maxCoeff() < band);
    row += sz;
  }
}

TEST_CASE("simulate_template collapses onto group means as sd -> 0") {
  SimulationSpec spec = SimulationSpec::well_identified().with_sizes(4, 3, 4);
  spec.group_sds = {1e-12, 1e-12, 1e-12};
  const SimulatedTemplate tpl = simulate_template(spec, 7);
  int row = 0;
  for (int g = 0; g < 3; ++g)
    for (int i = 0; i < spec.group_sizes[static_cast<std::size_t>(g)]; ++i, ++row)
      CHECK((tpl.positions.row(row).transpose() - spec.group_means[static_cast<std::size_t>(g)])
                .cwiseAbs()
                .maxCoeff() < 1e-10);
}

TEST_CASE("calibrate_intercept closed forms") {
  const LinkFunction link = LinkFunction::logistic();
  const Matrix coincident = Matrix::Zero(5, 2);
  CHECK(calibrate_intercept(coincident, 0.1, link) ==
        doctest::Approx(std::log(1.0 / 9.0)).epsilon(1e-8));

  Matrix pair(2, 2);
  pair << 0, 0, 2, 0;
  CHECK(calibrate_intercept(pair, 0.5, link) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("calibrated intercepts hit the target expected density") {
  const LinkFunction link = LinkFunction::logistic();
  for (const char* regime : {"well", "weak"}) {
    const SimulationSpec spec = SimulationSpec::by_name(regime);
    const SimulatedTemplate tpl = simulate_template(spec, 11);
    const double alpha = calibrate_intercept(tpl.positions, spec.target_density, link);
    double density = 0.0;
    const Index n = tpl.positions.rows();
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        density += link(alpha - (tpl.positions.row(i) - tpl.positions.row(j)).norm());
    density /= 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    CHECK(std::abs(density - spec.target_density) < 1e-8);
  }
}

TEST_CASE("expected density is strictly increasing in alpha") {
  const SimulatedTemplate tpl = simulate_template(SimulationSpec::well_identified().with_sizes(6, 3, 6), 3);
  const LinkFunction link = LinkFunction::logistic();
  const Index n = tpl.positions.rows();
  double prev = -1.0;
  for (double alpha = -8.0; alpha <= 8.0; alpha += 0.5) {
    double density = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        density += link(alpha - (tpl.positions.row(i) - tpl.positions.row(j)).norm());
    density /= 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    CHECK(density > prev);
    prev = density;
  }
}

TEST_CASE("calibrate_intercept rejects unreachable targets") {
  Matrix far(2, 2);
  far << 0, 0, 200.0, 0;  // g(50 - 200) is numerically zero
  CHECK_THROWS_AS(calibrate_intercept(far, 0.999999, LinkFunction::logistic()), NumericalError);
}

TEST_CASE("simulate_graph limits and validity") {
  rng::Engine e(5);
  const Matrix x = rng::gaussian_matrix(10, 2, e);
  const LinkFunction link = LinkFunction::logistic();
  CHECK(simulate_graph(x, -1000.0, link, 1).cast<int>().sum() == 0);
  const AdjacencyMatrix complete = simulate_graph(x, 1000.0, link, 1);
  CHECK(complete.sum() == 10 * 9);

  const AdjacencyMatrix a = simulate_graph(x, 0.0, link, 9);
  validate_adjacency(a);
  CHECK((a - simulate_graph(x, 0.0, link, 9)).cwiseAbs().maxCoeff() == 0);
}

TEST_CASE("simulated graphs match the calibrated density") {
  const SimulationSpec spec = SimulationSpec::well_identified();
  const SimulatedTemplate tpl = simulate_template(spec, 21);
  const LinkFunction link = LinkFunction::logistic();
  const double alpha = calibrate_intercept(tpl.positions, 0.1, link);
  const double n = static_cast<double>(tpl.positions.rows());

  double density = 0.0;
  for (int g = 0; g < 100; ++g) {
    const AdjacencyMatrix a = simulate_graph(tpl.positions, alpha, link, 1000 + g);
    density += a.cast<double>().sum() / (n * (n - 1.0));
  }
  density /= 100.0;
  CHECK(std::abs(density - 0.1) < 0.01);
}

TEST_CASE("log_likelihood explicit cases") {
  const LinkFunction link = LinkFunction::logistic();
  AdjacencyMatrix a(2, 2);
  a << 0, 1, 1, 0;
  const Matrix coincident = Matrix::Zero(2, 2);
  for (double alpha : {-1.0, 0.0, 0.7, 2.5})
    CHECK(log_likelihood(coincident, alpha, a, link) ==
          doctest::Approx(std::log(link(alpha))).epsilon(1e-12));

  // Empty graph, strongly negative intercept: the likelihood term tends to 0.
  AdjacencyMatrix empty = AdjacencyMatrix::Zero(4, 4);
  rng::Engine e(7);
  const Matrix x = rng::gaussian_matrix(4, 2, e);
  const double term = log_likelihood(x, -30.0, empty, link);
  CHECK(term < 0.0);
  CHECK(std::abs(term) < 1e-12);
}

TEST_CASE("log_likelihood matches a naive reference") {
  rng::Engine e(11);
  const Matrix x = rng::gaussian_matrix(7, 2, e);
  const LinkFunction link = LinkFunction::logistic();
  const AdjacencyMatrix a = simulate_graph(x, 0.2, link, 3);

  double naive = 0.0;
  for (Index i = 0; i < 7; ++i)
    for (Index j = i + 1; j < 7; ++j) {
      const double p = link(0.4 - (x.row(i) - x.row(j)).norm());
      naive += a(i, j) ? std::log(p) : std::log(1.0 - p);
    }
  CHECK(log_likelihood(x, 0.4, a, link) == doctest::Approx(naive).epsilon(1e-10));

  SamplerConfig config;
  const double lp = log_posterior(x, 0.4, a, config);
  const double prior = -0.5 * x.squaredNorm() / 100.0 - 0.5 * 0.16 / 4.0;
  CHECK(lp == doctest::Approx(naive + prior).epsilon(1e-10));
}

TEST_CASE("chain matches the quadrature posterior on the two-node model") {
  AdjacencyMatrix a(2, 2);
  a << 0, 1, 1, 0;
  SamplerConfig config;
  config.prior_sd_positions = 1.0;
  config.proposal_sd_position = 1.0;
  config.sample_alpha = false;
  config.alpha_init = 0.5;
  config.burn_in = 2000;
  config.thin = 20;
  config.draws = 1000;
  config.seed = 17;

  const McmcRun run = mh_sample(a, 1, config);
  std::vector<double> dist;
  for (const auto& f : run.draws.factors)
    dist.push_back(std::abs(f.Y(0, 0) - f.Y(1, 0)));

  const auto posterior =
      testutil::two_node_distance_posterior(1, 0.5, 1.0, config.link);
  const double se = testutil::batch_means_se(dist);
  CHECK(std::abs(stats::mean(dist) - posterior.mean) <= 3.0 * se);
}

TEST_CASE("zero-edge graph with a tight prior is prior-dominated") {
  AdjacencyMatrix empty = AdjacencyMatrix::Zero(5, 5);
  SamplerConfig config;
  config.prior_sd_positions = 0.1;
  config.proposal_sd_position = 0.05;
  config.sample_alpha = false;
  config.alpha_init = -5.0;
  config.burn_in = 2000;
  config.thin = 10;
  config.draws = 300;
  config.seed = 23;

  const McmcRun run = mh_sample(empty, 2, config);
  for (int k = 0; k < 2; ++k) {
    std::vector<double> coord;
    for (const auto& f : run.draws.factors)
      for (int i = 0; i < 5; ++i) coord.push_back(f.Y(i, k));
    const double sd = std::sqrt(stats::variance(coord));
    CHECK(sd > 0.05);
    CHECK(sd < 0.2);
  }
}

TEST_CASE("acceptance rates are reasonable at default proposal scales") {
  const SimulationSpec spec = SimulationSpec::weakly_identified();
  const SimulatedTemplate tpl = simulate_template(spec, 31);
  const LinkFunction link = LinkFunction::logistic();
  const double alpha = calibrate_intercept(tpl.positions, 0.1, link);
  const AdjacencyMatrix graph = simulate_graph(tpl.positions, alpha, link, 33);

  SamplerConfig config;  // default proposal scales
  config.burn_in = 200;
  config.thin = 5;
  config.draws = 100;
  config.seed = 37;
  const McmcRun run = mh_sample(graph, 2, config);
  CHECK(run.accept_position > 0.05);
  CHECK(run.accept_position < 0.8);
  CHECK(run.accept_alpha > 0.05);
  CHECK(run.accept_alpha < 0.8);
}

TEST_CASE("mh_sample is deterministic given the seed") {
  AdjacencyMatrix a(4, 4);
  a.setZero();
  a(0, 1) = a(1, 0) = 1;
  a(2, 3) = a(3, 2) = 1;
  SamplerConfig config;
  config.burn_in = 50;
  config.thin = 2;
  config.draws = 20;
  config.seed = 99;

  const McmcRun r1 = mh_sample(a, 2, config);
  const McmcRun r2 = mh_sample(a, 2, config);
  REQUIRE(r1.draws.size() == r2.draws.size());
  for (int m = 0; m < r1.draws.size(); ++m) {
    CHECK((r1.draws.factors[static_cast<std::size_t>(m)].Y -
           r2.draws.factors[static_cast<std::size_t>(m)].Y)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK(r1.draws.intercepts[static_cast<std::size_t>(m)] ==
          r2.draws.intercepts[static_cast<std::size_t>(m)]);
  }
  CHECK(r1.draws.size() == 20);
}

TEST_CASE("mh_sample validates inputs") {
  AdjacencyMatrix bad(2, 2);
  bad << 0, 1, 0, 0;  // asymmetric
  SamplerConfig config;
  CHECK_THROWS_AS(mh_sample(bad, 2, config), InvalidInputError);

  AdjacencyMatrix ok = AdjacencyMatrix::Zero(3, 3);
  CHECK_THROWS_AS(mh_sample(ok, 0, config), InvalidInputError);
  config.thin = 0;
  CHECK_THROWS_AS(mh_sample(ok, 2, config), InvalidInputError);
}

}  // TEST_SUITE
