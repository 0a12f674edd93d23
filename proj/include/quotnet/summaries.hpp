#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quotnet/link.hpp"
#include "quotnet/tangent.hpp"
#include "quotnet/types.hpp"

namespace quotnet {

// Posterior summary of one unordered node pair. Distance fields are always
// present; probability fields require intercept draws and a link function.
struct DyadSummary {
  int i = 0;
  int j = 0;
  double mean_distance = 0.0;
  double median_distance = 0.0;
  double var_distance = 0.0;  // denominator M - 1
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  bool has_probability = false;
  double mean_probability = 0.0;
  double ci_prob_lo = 0.0;
  double ci_prob_hi = 0.0;
  double mean_link_effect = 0.0;  // posterior mean of alpha - D_ij
};

// Per-dyad posterior summaries over the given pairs. Credible intervals are
// equal-tailed interpolated quantiles at the given level.
std::vector<DyadSummary> dyad_summaries(const DrawSet& draws,
                                        const std::vector<std::pair<int, int>>& pairs,
                                        double level,
                                        const LinkFunction* link = nullptr,
                                        int threads = 1);

struct NodeUncertainty {
  Vector values;       // U_i >= 0, one per node
  std::string method;  // "monte-carlo" or "delta"
};

// U_i: average posterior variance of the distances from node i to all
// others, from the empirical dyad variances.
NodeUncertainty node_uncertainty(const DrawSet& draws, int threads = 1);

// Same index from the local linearization at the base of the sample.
NodeUncertainty node_uncertainty(const TangentSample& sample, int threads = 1);

// Invariant node-wise loss against a known structure: mean squared gap
// between posterior mean dyad distances and the true ones.
Vector nodewise_loss(const DrawSet& draws, const GramMatrix& truth, int threads = 1);

struct SensitivityResult {
  double s_ref = 0.0;  // mean pairwise Frobenius gap
  int k = 0;
  std::vector<int> reference_indices;
  std::vector<double> pairwise_gaps;  // k(k-1)/2 entries, (k, l) pairs in index order
};

// Reference-sensitivity index: fixed-reference Procrustes means (with
// randomized orientations) under k distinct references drawn uniformly
// without replacement, summarized by the mean pairwise Frobenius gap of the
// resulting Gram matrices.
SensitivityResult reference_sensitivity(const DrawSet& draws, int k, std::uint64_t seed);

// Replicate networks: replicate t uses draw t mod M; edges are independent
// Bernoulli(g(alpha - D_ij)) over i < j, symmetrized with a zero diagonal.
// Deterministic given the seed; each replicate has a derived sub-seed.
std::vector<AdjacencyMatrix> posterior_predictive(const DrawSet& draws,
                                                  const LinkFunction& link, int count,
                                                  std::uint64_t seed);

// All unordered pairs (i, j), i < j, in row-major order.
std::vector<std::pair<int, int>> all_pairs(int n);

}  // namespace quotnet
