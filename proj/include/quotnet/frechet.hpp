#pragma once

#include <cstdint>
#include <vector>

#include "quotnet/quotient.hpp"
#include "quotnet/types.hpp"

namespace quotnet {

struct FrechetConfig {
  double step_size = 1.0;
  // Relative stopping criterion: ||step_size * Z_hor||_F < tolerance * max(1, ||Y||_F).
  double tolerance = 1e-8;
  int max_iterations = 200;

  enum class Init { MeanGramEigen, DrawIndex };
  Init init = Init::MeanGramEigen;
  int init_index = 0;  // used when init == DrawIndex

  // Halve the step until the objective does not increase (at most
  // max_halvings times); guarantees monotone descent.
  bool backtracking = true;
  int max_halvings = 30;

  int threads = 1;

  void validate() const;
};

struct FrechetResult {
  CenteredFactor mean_factor;
  GramMatrix mean_gram;
  double variation = 0.0;  // mean squared quotient distance to the draws
  int iterations = 0;
  bool converged = false;
  Vector per_draw_distances;
  // Objective value at the initial point and after each accepted step.
  std::vector<double> objective_trace;
};

// Gradient-style minimization of the mean squared quotient distance:
// align every draw to the iterate, average the aligned factors, project the
// increment onto the horizontal space, retract. Returns the local minimizer
// found together with dispersion diagnostics.
FrechetResult frechet_mean(const DrawSet& draws, const FrechetConfig& config = {});

// Mean squared quotient distance attained by the result.
double frechet_variation(const FrechetResult& result);

// Empirical quantile of the per-draw distances at the given level in (0, 1]:
// the radius of the intrinsic credible ball.
double credible_radius(const FrechetResult& result, double level);

// Index minimizing the total squared quotient distance to all other draws;
// ties break toward the smallest index.
int quotient_medoid(const DrawSet& draws, int threads = 1);

struct ProcrustesMeanResult {
  Matrix mean_factor;  // average of the aligned factors (centered)
  GramMatrix mean_gram;
};

// Fixed-reference baseline: align every draw to the reference draw and
// average coordinates. With randomize_orientation each factor is first
// right-multiplied by an independent Haar orthogonal matrix, which leaves
// every Gram matrix unchanged.
ProcrustesMeanResult procrustes_mean(const DrawSet& draws, int reference,
                                     bool randomize_orientation, std::uint64_t seed);

}  // namespace quotnet
