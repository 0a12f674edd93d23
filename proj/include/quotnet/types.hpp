#pragma once

#include <Eigen/Dense>
#include <vector>

#include "quotnet/error.hpp"

namespace quotnet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// A latent configuration: n x r matrix of coordinates, one row per node.
// Any finite real matrix qualifies; centering is not assumed.
using Configuration = Matrix;

// Undirected simple graph: symmetric 0/1 entries, zero diagonal.
using AdjacencyMatrix = Eigen::MatrixXi;

// Centering residue allowed on a factor, scaled by n * max|entry|.
inline constexpr double kCenteringTol = 1e-10;
// A factor is treated as full column rank when sigma_min > kRankRatioTol * sigma_max.
inline constexpr double kRankRatioTol = 1e-10;
// Eigenvalue tolerances on Gram matrices, relative to the trace.
inline constexpr double kPsdTol = 1e-10;
// S is accepted as positive definite when lambda_min > kSpdTol * trace(S).
inline constexpr double kSpdTol = 1e-12;

// An n x r factor with (numerically) zero column sums. The canonical
// representative of a centered Gram matrix B = Y * Y^T, unique up to
// right-multiplication by an orthogonal matrix.
struct CenteredFactor {
  Matrix Y;

  Index n() const { return Y.rows(); }
  Index r() const { return Y.cols(); }

  // Validates the centering invariant; throws InvalidInputError otherwise.
  static CenteredFactor checked(Matrix factor);
};

// Symmetric PSD matrix with zero row sums and rank at most rank_bound.
struct GramMatrix {
  Matrix B;
  int rank_bound = 0;

  Index n() const { return B.rows(); }
};

// Posterior draws: M centered factors sharing (n, r), optionally paired
// with M intercept draws.
struct DrawSet {
  std::vector<CenteredFactor> factors;
  std::vector<double> intercepts;  // empty, or one per factor

  int size() const { return static_cast<int>(factors.size()); }
  Index n() const { return factors.empty() ? 0 : factors.front().n(); }
  Index r() const { return factors.empty() ? 0 : factors.front().r(); }
  bool has_intercepts() const { return !intercepts.empty(); }

  // Shape agreement, centering, intercept count and finiteness.
  void validate() const;
};

// ---- invariant helpers ----------------------------------------------------

bool all_finite(const Matrix& m);
void require_finite(const Matrix& m, const char* what);

// Column sums within kCenteringTol * n * max|entry|.
bool is_centered(const Matrix& y, double tol = kCenteringTol);

// Zero column sums and symmetric base^T * z (both within tolerance):
// membership test for the horizontal space at `base`.
bool is_horizontal(const CenteredFactor& base, const Matrix& z, double tol = 1e-8);

// sigma_min > kRankRatioTol * sigma_max for the factor.
bool has_full_column_rank(const Matrix& y, double ratio_tol = kRankRatioTol);

// Checks symmetry, zero row sums, eigenvalue floor and the rank bound;
// throws InvalidInputError naming the violated condition.
void validate_gram(const GramMatrix& g);

void validate_adjacency(const AdjacencyMatrix& a);

}  // namespace quotnet
