#pragma once

#include <vector>

#include "quotnet/types.hpp"

namespace quotnet {

// Rank-r eigendecomposition embedding of a Gram matrix: U_r * Lambda_r^{1/2}
// on the top rank_bound eigenpairs, negative eigenvalues clamped at zero,
// columns sign-normalized (largest-magnitude entry positive).
Matrix embed_mean(const GramMatrix& gram);

// Procrustes-aligns every draw to the mean factor and returns the aligned
// coordinates. A display convention only: no summary is computed from these.
std::vector<Matrix> align_for_display(const DrawSet& draws, const CenteredFactor& mean_factor);

}  // namespace quotnet
