#include <cmath>

#include "doctest.h"
#include "quotnet/frechet.hpp"
#include "quotnet/rng.hpp"

using namespace quotnet;

namespace {

DrawSet rotated_copies(const CenteredFactor& base, int m, std::uint64_t seed) {
  rng::Engine e(seed);
  DrawSet draws;
  for (int i = 0; i < m; ++i)
    draws.factors.push_back(CenteredFactor{base.Y * rng::haar_orthogonal(base.r(), e)});
  return draws;
}

}  // namespace

TEST_SUITE("frechet") {

TEST_CASE("identical draws converge immediately") {
  rng::Engine e(3);
  const CenteredFactor y0 = center_configuration(rng::gaussian_matrix(6, 2, e));
  DrawSet draws;
  for (int i = 0; i < 10; ++i) draws.factors.push_back(y0);

  const FrechetResult res = frechet_mean(draws);
  CHECK(res.converged);
  CHECK(res.iterations <= 2);
  CHECK(res.variation == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((res.mean_gram.B - y0.Y * y0.Y.transpose()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("rotated copies recover the common quotient point") {
  rng::Engine e(7);
  const CenteredFactor star = center_configuration(rng::gaussian_matrix(8, 2, e));
  const DrawSet draws = rotated_copies(star, 50, 99);
  const FrechetResult res = frechet_mean(draws);
  CHECK(res.converged);
  CHECK(quotient_distance(res.mean_factor, star) < 1e-8);
}

TEST_CASE("r = 1 two-draw case matches the scalar grid oracle") {
  // Draws y and 3y on n = 4 nodes; O(1) = {+-1} so the objective reduces to
  // F(t) = 0.5 ||y||^2 [(t-1)^2 + (t-3)^2] over scalar multiples t * y.
  Matrix base(4, 1);
  base << 1.0, -0.5, 0.25, -0.75;
  const CenteredFactor y = center_configuration(base);
  DrawSet draws;
  draws.factors.push_back(y);
  draws.factors.push_back(CenteredFactor{3.0 * y.Y});

  const FrechetResult res = frechet_mean(draws);
  CHECK(res.converged);

  double best_t = 0.0, best_f = std::numeric_limits<double>::infinity();
  for (double t = 0.0; t <= 4.0; t += 1e-4) {
    const double f = 0.5 * y.Y.squaredNorm() * ((t - 1.0) * (t - 1.0) + (t - 3.0) * (t - 3.0));
    if (f < best_f) {
      best_f = f;
      best_t = t;
    }
  }
  CHECK(best_t == doctest::Approx(2.0).epsilon(1e-3));
  const CenteredFactor oracle{best_t * y.Y};
  CHECK(quotient_distance(res.mean_factor, oracle) < 1e-6);
  CHECK(res.variation == doctest::Approx(best_f).epsilon(1e-6));
}

TEST_CASE("objective trace is monotone non-increasing") {
  rng::Engine e(13);
  DrawSet draws;
  const CenteredFactor star = center_configuration(rng::gaussian_matrix(7, 2, e));
  for (int i = 0; i < 30; ++i) {
    Matrix noise = 0.3 * rng::gaussian_matrix(7, 2, e);
    draws.factors.push_back(retract(star, noise));
  }
  const FrechetResult res = frechet_mean(draws);
  REQUIRE(res.objective_trace.size() >= 1);
  for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
    CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-12);
  // Variation invariant: mean of squared per-draw distances.
  double s = 0.0;
  for (Index i = 0; i < res.per_draw_distances.size(); ++i)
    s += res.per_draw_distances(i) * res.per_draw_distances(i);
  CHECK(res.variation == doctest::Approx(s / draws.size()).epsilon(1e-10));
}

TEST_CASE("canonicality: per-draw rotations do not move the mean gram") {
  rng::Engine e(17);
  DrawSet draws;
  const CenteredFactor star = center_configuration(rng::gaussian_matrix(6, 2, e));
  for (int i = 0; i < 25; ++i)
    draws.factors.push_back(retract(star, 0.2 * rng::gaussian_matrix(6, 2, e)));

  const FrechetResult plain = frechet_mean(draws);
  rng::Engine spin(77);
  DrawSet rotated;
  for (const auto& f : draws.factors)
    rotated.factors.push_back(CenteredFactor{f.Y * rng::haar_orthogonal(2, spin)});
  const FrechetResult moved = frechet_mean(rotated);
  CHECK((plain.mean_gram.B - moved.mean_gram.B).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("frechet_mean rejects an empty DrawSet") {
  DrawSet draws;
  CHECK_THROWS_AS(frechet_mean(draws), InvalidInputError);
}

TEST_CASE("frechet_variation") {
  FrechetResult res;
  res.per_draw_distances = Vector(2);
  res.per_draw_distances << 1.0, 1.0;
  CHECK(frechet_variation(res) == doctest::Approx(1.0));

  res.per_draw_distances = Vector::Zero(5);
  CHECK(frechet_variation(res) == 0.0);
}

TEST_CASE("variation is minimal against single-draw candidates") {
  rng::Engine e(19);
  DrawSet draws;
  for (int i = 0; i < 12; ++i)
    draws.factors.push_back(center_configuration(rng::gaussian_matrix(5, 2, e)));
  const FrechetResult res = frechet_mean(draws);
  for (const auto& candidate : draws.factors) {
    double obj = 0.0;
    for (const auto& f : draws.factors) {
      const double d = quotient_distance(candidate, f);
      obj += d * d;
    }
    obj /= draws.size();
    CHECK(res.variation <= obj + 1e-10);
  }
}

TEST_CASE("credible_radius") {
  FrechetResult res;
  res.per_draw_distances = Vector(5);
  res.per_draw_distances << 5.0, 3.0, 1.0, 4.0, 2.0;
  CHECK(credible_radius(res, 1.0) == doctest::Approx(5.0));
  CHECK(credible_radius(res, 0.5) == doctest::Approx(3.0));
  CHECK_THROWS_AS(credible_radius(res, 0.0), InvalidInputError);
  CHECK_THROWS_AS(credible_radius(res, 1.5), InvalidInputError);

  // Monotone in the level.
  double prev = 0.0;
  for (double level : {0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
    const double r = credible_radius(res, level);
    CHECK(r >= prev);
    prev = r;
  }

  res.per_draw_distances = Vector::Zero(4);
  for (double level : {0.2, 0.5, 1.0})
    CHECK(credible_radius(res, level) == 0.0);
}

TEST_CASE("quotient_medoid") {
  rng::Engine e(23);
  const CenteredFactor y0 = center_configuration(rng::gaussian_matrix(6, 2, e));

  DrawSet one;
  one.factors.push_back(y0);
  CHECK(quotient_medoid(one) == 0);

  // Draw 1 sits midway between draws 0 and 2 along a horizontal direction.
  Matrix noise = 0.05 * rng::gaussian_matrix(6, 2, e);
  noise.rowwise() -= noise.colwise().mean().eval();
  Matrix step = horizontal_project(y0, noise);
  DrawSet line;
  line.factors.push_back(y0);
  line.factors.push_back(retract(y0, step));
  line.factors.push_back(retract(y0, 2.0 * step));
  CHECK(quotient_medoid(line) == 1);

  DrawSet ties;
  for (int i = 0; i < 4; ++i) ties.factors.push_back(y0);
  CHECK(quotient_medoid(ties) == 0);
}

TEST_CASE("procrustes_mean on concentrated draws") {
  rng::Engine e(29);
  const CenteredFactor star = center_configuration(rng::gaussian_matrix(6, 2, e));
  const DrawSet draws = rotated_copies(star, 20, 5);
  const Matrix common = star.Y * star.Y.transpose();

  for (int ref : {0, 7, 19}) {
    const ProcrustesMeanResult pm = procrustes_mean(draws, ref, false, 0);
    CHECK((pm.mean_gram.B - common).cwiseAbs().maxCoeff() < 1e-8);
  }
  const ProcrustesMeanResult on = procrustes_mean(draws, 3, true, 123);
  const ProcrustesMeanResult off = procrustes_mean(draws, 3, false, 123);
  CHECK((on.mean_gram.B - off.mean_gram.B).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("procrustes_mean is reference-sensitive on dispersed draws") {
  // Three well-separated quotient points: alignment rotations do not compose
  // across references, so fixed-reference means disagree.
  rng::Engine e(31);
  DrawSet draws;
  for (double scale : {1.0, 3.0, 7.0})
    for (int i = 0; i < 4; ++i)
      draws.factors.push_back(center_configuration(scale * rng::gaussian_matrix(6, 2, e)));
  const ProcrustesMeanResult ra = procrustes_mean(draws, 0, true, 7);
  const ProcrustesMeanResult rb = procrustes_mean(draws, 5, true, 7);
  CHECK((ra.mean_gram.B - rb.mean_gram.B).norm() > 1e-6);

  CHECK_THROWS_AS(procrustes_mean(draws, 99, false, 0), InvalidInputError);
}

}  // TEST_SUITE
