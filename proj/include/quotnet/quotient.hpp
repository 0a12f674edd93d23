#pragma once

#include "quotnet/types.hpp"

namespace quotnet {

// Subtracts the column-means row from X. The centering matrix is never
// materialized; cost is O(nr).
CenteredFactor center_configuration(const Configuration& x);

// Centered Gram matrix B = Y * Y^T of the centered configuration, symmetry
// enforced by averaging with the transpose.
GramMatrix gram_of(const Configuration& x);

// Squared inter-node distances recovered from a Gram matrix:
// entry (i, j) = B_ii + B_jj - 2 B_ij, clamped below at zero.
Matrix squared_distances_from_gram(const GramMatrix& g);

// Elementwise square root of the above.
Matrix distances_from_gram(const GramMatrix& g);

struct MdsResult {
  GramMatrix gram;
  // Most negative eigenvalue of the double-centered matrix. Strictly
  // negative (beyond roundoff) when the input distances are not realizable
  // in Euclidean space; the matrix is returned unrepaired.
  double min_eigenvalue = 0.0;
};

// Classical MDS identity: -1/2 times the doubly centered squared-distance
// matrix. Input must be symmetric with zero diagonal and nonnegative entries.
MdsResult gram_from_squared_distances(const Matrix& squared_distances);

struct ProcrustesResult {
  Matrix rotation;  // r x r orthogonal; right-multiplies y2
  double residual = 0.0;
};

// Orthogonal Procrustes problem min_R ||Y1 - Y2 R||_F. The rotation is
// U V^T from the SVD Y2^T Y1 = U S V^T; when the cross-product is rank
// deficient the minimizer is not unique but the residual still is.
ProcrustesResult procrustes_align(const CenteredFactor& y1, const CenteredFactor& y2);

// Quotient distance between the Gram points Y1 Y1^T and Y2 Y2^T: the
// Procrustes residual. Symmetric, and zero exactly when the Grams agree.
double quotient_distance(const CenteredFactor& y1, const CenteredFactor& y2);

// Solves S W + W S = C for skew-symmetric W, with S symmetric positive
// definite and C skew-symmetric, via the eigendecomposition of S:
// (Q^T W Q)_ij = (Q^T C Q)_ij / (lambda_i + lambda_j).
Matrix solve_lyapunov(const Matrix& spd, const Matrix& skew);

// Projection of a centered perturbation Z onto the horizontal space at Y:
// Z - Y W with W from the Lyapunov equation above. Requires Y of full
// column rank; the quotient is not smooth below the rank-r stratum.
Matrix horizontal_project(const CenteredFactor& base, const Matrix& z);

// First-order retraction: add the step and recenter.
CenteredFactor retract(const CenteredFactor& base, const Matrix& step);

// Log lift of `to` at `from`: the Procrustes-aligned difference
// to * R - from, passed through the horizontal projection as a numerical
// guard (the aligned difference is already horizontal in exact arithmetic).
// Its Frobenius norm equals the quotient distance on the rank-r stratum.
Matrix log_lift(const CenteredFactor& from, const CenteredFactor& to);

}  // namespace quotnet
