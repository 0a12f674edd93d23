#pragma once

#include <utility>
#include <vector>

#include "quotnet/quotient.hpp"
#include "quotnet/types.hpp"

namespace quotnet {

// Log lifts of the retained draws at a base factor (normally the Fréchet
// mean). Residual norms equal the quotient distances to the base.
struct TangentSample {
  CenteredFactor base;
  std::vector<Matrix> residuals;
  std::vector<int> draw_indices;  // original index of each retained draw
  int excluded_count = 0;         // draws dropped by the rank guard

  int size() const { return static_cast<int>(residuals.size()); }
};

TangentSample tangent_residuals(const CenteredFactor& base, const DrawSet& draws);

// Empirical covariance of the vectorized residuals (column-major vec,
// denominator M - 1) with its eigendecomposition attached. The support has
// dimension at most nr - r(r+1)/2, the dimension of the rank-r stratum.
struct TangentCovariance {
  Matrix matrix;        // (n r) x (n r), symmetric PSD
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // columns matching eigenvalues; sign-normalized
  int n = 0;
  int r = 0;
  CenteredFactor base;

  int effective_dim() const { return n * r - r * (r + 1) / 2; }
};

TangentCovariance tangent_covariance(const TangentSample& sample);

// Top-k eigenpairs reshaped to n x r tangents and re-projected onto the
// horizontal space at the base as a guard.
std::vector<std::pair<double, Matrix>> principal_directions(const TangentCovariance& cov,
                                                            int k);

struct DeltaVariance {
  double variance = 0.0;
  // Set when the dyad distance at the base is (near) zero and the
  // linearization was applied to the squared distance instead.
  bool squared_scale = false;
};

// Delta-method posterior variance of the dyad distance D_ij: pushes each
// residual through the linearized Gram perturbation and takes the empirical
// variance of the resulting scalar.
DeltaVariance delta_variance_distance(const TangentSample& sample, int i, int j);

}  // namespace quotnet
