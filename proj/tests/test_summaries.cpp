#include <cmath>

#include "doctest.h"
#include "quotnet/frechet.hpp"
#include "quotnet/lsm.hpp"
#include "quotnet/quotient.hpp"
#include "quotnet/rng.hpp"
#include "quotnet/stats.hpp"
#include "quotnet/summaries.hpp"
#include "quotnet/tangent.hpp"

using namespace quotnet;

namespace {

// Two nodes in one dimension at the given separations.
DrawSet two_node_draws(const std::vector<double>& distances) {
  DrawSet draws;
  for (double d : distances) {
    Matrix y(2, 1);
    y << -d / 2.0, d / 2.0;
    draws.factors.push_back(CenteredFactor{y});
  }
  return draws;
}

DrawSet noisy_draws(const CenteredFactor& base, int m, double scale, std::uint64_t seed) {
  rng::Engine e(seed);
  DrawSet draws;
  for (int i = 0; i < m; ++i) {
    Matrix z = scale * rng::gaussian_matrix(base.n(), base.r(), e);
    draws.factors.push_back(retract(base, z));
  }
  return draws;
}

}  // namespace

TEST_SUITE("summaries") {

TEST_CASE("link functions") {
  const LinkFunction logistic = LinkFunction::logistic();
  CHECK(logistic(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(LinkFunction::probit()(0.0) == doctest::Approx(0.5).epsilon(1e-15));

  double prev = -1.0;
  for (double t = -30.0; t <= 30.0; t += 0.25) {
    const double g = logistic(t);
    CHECK(g >= prev);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
    prev = g;
    // Stable log forms agree with direct evaluation away from the tails.
    if (t > -15.0 && t < 15.0) {
      CHECK(logistic.log(t) == doctest::Approx(std::log(logistic(t))).epsilon(1e-9));
      CHECK(logistic.log1m(t) == doctest::Approx(std::log1p(-logistic(t))).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(LinkFunction::by_name("cauchy"), InvalidInputError);
}

TEST_CASE("dyad summaries on identical draws") {
  DrawSet draws = two_node_draws({2.0, 2.0, 2.0, 2.0});
  const auto out = dyad_summaries(draws, {{0, 1}}, 0.9);
  REQUIRE(out.size() == 1);
  CHECK(out[0].mean_distance == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(out[0].var_distance == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(out[0].ci_lo == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(out[0].ci_hi == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(out[0].median_distance == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("dyad probabilities at zero link effect are exactly one half") {
  DrawSet draws = two_node_draws({1.0, 2.0, 0.5, 3.0});
  // Intercept equals the dyad distance draw by draw, so alpha - D == 0.
  for (const auto& f : draws.factors)
    draws.intercepts.push_back((f.Y.row(0) - f.Y.row(1)).norm());
  const LinkFunction link = LinkFunction::logistic();
  const auto out = dyad_summaries(draws, {{0, 1}}, 0.9, &link);
  REQUIRE(out.size() == 1);
  CHECK(out[0].has_probability);
  CHECK(out[0].mean_probability == 0.5);
  CHECK(out[0].mean_link_effect == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("dyad summaries arithmetic oracle") {
  DrawSet draws = two_node_draws({1.0, 2.0, 3.0, 4.0});
  const auto out = dyad_summaries(draws, {{0, 1}}, 0.5);
  REQUIRE(out.size() == 1);
  CHECK(out[0].mean_distance == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(out[0].var_distance == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("dyad summaries errors") {
  DrawSet draws = two_node_draws({1.0, 2.0});
  CHECK_THROWS_AS(dyad_summaries(draws, {{0, 0}}, 0.9), InvalidInputError);
  CHECK_THROWS_AS(dyad_summaries(draws, {{0, 5}}, 0.9), InvalidInputError);
  const LinkFunction link = LinkFunction::logistic();
  CHECK_THROWS_AS(dyad_summaries(draws, {{0, 1}}, 0.9, &link), InvalidInputError);
  CHECK_THROWS_AS(dyad_summaries(draws, {{0, 1}}, 1.5), InvalidInputError);
}

TEST_CASE("node uncertainty vanishes on identical draws") {
  rng::Engine e(3);
  const CenteredFactor y = center_configuration(rng::gaussian_matrix(6, 2, e));
  DrawSet draws;
  for (int i = 0; i < 10; ++i) draws.factors.push_back(y);
  const NodeUncertainty u = node_uncertainty(draws);
  CHECK(u.method == "monte-carlo");
  CHECK(u.values.maxCoeff() < 1e-20);
}

TEST_CASE("node uncertainty scales quadratically with residual size") {
  rng::Engine e(5);
  const CenteredFactor base = center_configuration(2.0 * rng::gaussian_matrix(6, 2, e));
  std::vector<Matrix> residuals;
  for (int i = 0; i < 40; ++i) {
    Matrix z = rng::gaussian_matrix(6, 2, e);
    z.rowwise() -= z.colwise().mean().eval();
    residuals.push_back(horizontal_project(base, z));
  }
  const auto max_u = [&](double s) {
    DrawSet draws;
    for (const auto& xi : residuals) draws.factors.push_back(retract(base, s * xi));
    return node_uncertainty(draws).values.maxCoeff();
  };
  const double u0 = max_u(1e-2);
  CHECK(max_u(1e-3) / u0 == doctest::Approx(1e-2).epsilon(0.1));
  CHECK(max_u(1e-4) / u0 == doctest::Approx(1e-4).epsilon(0.1));
}

TEST_CASE("node uncertainty equals the off-diagonal row mean of dyad variances") {
  rng::Engine e(7);
  DrawSet draws;
  for (int i = 0; i < 12; ++i)
    draws.factors.push_back(center_configuration(rng::gaussian_matrix(5, 2, e)));
  const NodeUncertainty u = node_uncertainty(draws);
  const auto pairs = all_pairs(5);
  const auto dyads = dyad_summaries(draws, pairs, 0.9);
  Vector expect = Vector::Zero(5);
  for (const auto& d : dyads) {
    expect(d.i) += d.var_distance;
    expect(d.j) += d.var_distance;
  }
  expect /= 4.0;
  CHECK((u.values - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("delta-method node uncertainty on concentrated draws") {
  rng::Engine e(9);
  const CenteredFactor base = center_configuration(2.0 * rng::gaussian_matrix(6, 2, e));
  const DrawSet draws = noisy_draws(base, 50, 1e-3, 11);
  const TangentSample sample = tangent_residuals(base, draws);
  const NodeUncertainty mc = node_uncertainty(draws);
  const NodeUncertainty delta = node_uncertainty(sample);
  CHECK(delta.method == "delta");
  for (Index i = 0; i < 6; ++i)
    CHECK(delta.values(i) / mc.values(i) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("nodewise loss") {
  rng::Engine e(11);
  const Matrix x = rng::gaussian_matrix(5, 2, e);
  const GramMatrix truth = gram_of(x);
  DrawSet exact;
  for (int i = 0; i < 6; ++i) exact.factors.push_back(center_configuration(x));
  CHECK(nodewise_loss(exact, truth).maxCoeff() < 1e-20);

  // Single draw, n = 2, dyad distance off by one.
  DrawSet off = two_node_draws({3.0});
  Matrix t2(2, 1);
  t2 << -1.0, 1.0;  // true distance 2
  const GramMatrix truth2 = gram_of(t2);
  const Vector loss = nodewise_loss(off, truth2);
  CHECK(loss(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(loss(1) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(nodewise_loss(off, truth), InvalidInputError);
}

TEST_CASE("canonicality of dyad, node and loss summaries") {
  rng::Engine e(13);
  const CenteredFactor base = center_configuration(rng::gaussian_matrix(6, 2, e));
  DrawSet draws = noisy_draws(base, 20, 0.3, 17);
  draws.intercepts.assign(20, 0.7);
  const GramMatrix truth = GramMatrix{base.Y * base.Y.transpose(), 2};

  DrawSet spun = draws;
  rng::Engine spin(19);
  for (auto& f : spun.factors) f.Y = f.Y * rng::haar_orthogonal(2, spin);

  const LinkFunction link = LinkFunction::logistic();
  const auto pairs = all_pairs(6);
  const auto a = dyad_summaries(draws, pairs, 0.9, &link);
  const auto b = dyad_summaries(spun, pairs, 0.9, &link);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(std::abs(a[k].mean_distance - b[k].mean_distance) < 1e-8);
    CHECK(std::abs(a[k].median_distance - b[k].median_distance) < 1e-8);
    CHECK(std::abs(a[k].var_distance - b[k].var_distance) < 1e-8);
    CHECK(std::abs(a[k].ci_lo - b[k].ci_lo) < 1e-8);
    CHECK(std::abs(a[k].ci_hi - b[k].ci_hi) < 1e-8);
    CHECK(std::abs(a[k].mean_probability - b[k].mean_probability) < 1e-8);
    CHECK(std::abs(a[k].mean_link_effect - b[k].mean_link_effect) < 1e-8);
  }
  CHECK((node_uncertainty(draws).values - node_uncertainty(spun).values).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((nodewise_loss(draws, truth) - nodewise_loss(spun, truth)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("bridge group carries the largest uncertainty at full scale" *
          doctest::timeout(300)) {
  // Weak regime at the full design size; the group ordering needs the full
  // n = 120 information level to hold reliably.
  const LinkFunction link = LinkFunction::logistic();
  const SimulationSpec spec = SimulationSpec::weakly_identified();
  const SimulatedTemplate tpl = simulate_template(spec, 1001);
  const double alpha = calibrate_intercept(tpl.positions, 0.1, link);
  const AdjacencyMatrix graph =
      simulate_graph(tpl.positions, alpha, link, rng::derive(1001, 1));

  SamplerConfig config;
  config.burn_in = 10000;
  config.thin = 20;
  config.draws = 300;
  config.proposal_sd_position = 0.5;
  config.proposal_sd_alpha = 0.3;
  config.seed = rng::derive(1001, 2);
  const McmcRun run = mh_sample(graph, 2, config);

  const NodeUncertainty u = node_uncertainty(run.draws, 4);
  const double mean_left = u.values.segment(0, 48).mean();
  const double mean_bridge = u.values.segment(48, 24).mean();
  const double mean_right = u.values.segment(72, 48).mean();
  CHECK(mean_bridge > mean_left);
  CHECK(mean_bridge > mean_right);
}

TEST_CASE("reference sensitivity on concentrated draws") {
  rng::Engine e(23);
  const CenteredFactor star = center_configuration(rng::gaussian_matrix(6, 2, e));
  DrawSet draws;
  for (int i = 0; i < 12; ++i)
    draws.factors.push_back(CenteredFactor{star.Y * rng::haar_orthogonal(2, e)});
  const SensitivityResult res = reference_sensitivity(draws, 6, 3);
  CHECK(res.s_ref < 1e-6);
  CHECK(res.pairwise_gaps.size() == 15);
}

TEST_CASE("reference sensitivity with K = 2 equals the single gap") {
  rng::Engine e(29);
  DrawSet draws;
  for (double scale : {1.0, 3.0, 6.0})
    for (int i = 0; i < 4; ++i)
      draws.factors.push_back(center_configuration(scale * rng::gaussian_matrix(5, 2, e)));

  const SensitivityResult res = reference_sensitivity(draws, 2, 31);
  REQUIRE(res.pairwise_gaps.size() == 1);
  CHECK(res.s_ref == doctest::Approx(res.pairwise_gaps[0]).epsilon(1e-15));
  REQUIRE(res.reference_indices.size() == 2);
  CHECK(res.reference_indices[0] != res.reference_indices[1]);

  // Direct evaluation: orientation randomization is gauge, so the same
  // references without randomization give the same gap.
  const Matrix ga = procrustes_mean(draws, res.reference_indices[0], false, 0).mean_gram.B;
  const Matrix gb = procrustes_mean(draws, res.reference_indices[1], false, 0).mean_gram.B;
  CHECK(res.pairwise_gaps[0] == doctest::Approx((ga - gb).norm()).epsilon(1e-8));

  CHECK_THROWS_AS(reference_sensitivity(draws, 1, 0), InvalidInputError);
  CHECK_THROWS_AS(reference_sensitivity(draws, 13, 0), InvalidInputError);
}

TEST_CASE("sensitivity invariant: s_ref is the mean pairwise gap") {
  rng::Engine e(31);
  DrawSet draws;
  for (int i = 0; i < 10; ++i)
    draws.factors.push_back(center_configuration(rng::gaussian_matrix(5, 2, e)));
  const SensitivityResult res = reference_sensitivity(draws, 5, 7);
  CHECK(res.s_ref == doctest::Approx(stats::mean(res.pairwise_gaps)).epsilon(1e-12));
}

TEST_CASE("posterior predictive limits") {
  rng::Engine e(37);
  DrawSet draws = noisy_draws(center_configuration(rng::gaussian_matrix(6, 2, e)), 4, 0.2, 5);

  draws.intercepts.assign(4, -1000.0);
  for (const auto& a : posterior_predictive(draws, LinkFunction::logistic(), 6, 1))
    CHECK(a.cwiseAbs().maxCoeff() == 0);

  draws.intercepts.assign(4, 1000.0);
  for (const auto& a : posterior_predictive(draws, LinkFunction::logistic(), 6, 1)) {
    CHECK(a.diagonal().cwiseAbs().maxCoeff() == 0);
    CHECK((a + AdjacencyMatrix::Identity(6, 6)).minCoeff() == 1);
  }
}

TEST_CASE("posterior predictive density band at one half") {
  // All nodes coincide and alpha = 0, so every edge probability is 1/2.
  Matrix flat = Matrix::Zero(20, 2);
  flat.row(0) << 1e-14, 0.0;  // keep the factor nonzero but distances ~ 0
  DrawSet draws;
  draws.factors.push_back(center_configuration(flat));
  draws.intercepts.assign(1, 0.0);

  const auto reps = posterior_predictive(draws, LinkFunction::logistic(), 500, 99);
  double density = 0.0;
  for (const auto& a : reps) {
    validate_adjacency(a);
    density += a.cast<double>().sum() / (20.0 * 19.0);
  }
  density /= static_cast<double>(reps.size());
  CHECK(density == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("posterior predictive density is unbiased for the mean edge probability") {
  rng::Engine e(41);
  DrawSet draws = noisy_draws(center_configuration(rng::gaussian_matrix(8, 2, e)), 5, 0.2, 43);
  draws.intercepts = {0.3, -0.1, 0.6, 0.2, -0.4};
  const LinkFunction link = LinkFunction::logistic();

  double p_mean = 0.0;
  for (int m = 0; m < draws.size(); ++m) {
    const auto& f = draws.factors[static_cast<std::size_t>(m)];
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j)
        p_mean += link(draws.intercepts[static_cast<std::size_t>(m)] -
                       (f.Y.row(i) - f.Y.row(j)).norm());
  }
  p_mean /= draws.size() * 28.0;

  const int count = 2000;
  const auto reps = posterior_predictive(draws, link, count, 7);
  double density = 0.0;
  for (const auto& a : reps) density += a.cast<double>().sum() / (2.0 * 28.0);
  density /= static_cast<double>(count);

  const double se = std::sqrt(p_mean * (1.0 - p_mean) / (count * 28.0));
  CHECK(std::abs(density - p_mean) <= 3.0 * se + 1e-12);

  DrawSet no_alpha = draws;
  no_alpha.intercepts.clear();
  CHECK_THROWS_AS(posterior_predictive(no_alpha, link, 1, 0), InvalidInputError);
}

}  // TEST_SUITE
