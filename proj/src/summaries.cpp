#include "quotnet/summaries.hpp"

#include <algorithm>
#include <cmath>

#include "quotnet/frechet.hpp"
#include "quotnet/parallel.hpp"
#include "quotnet/rng.hpp"
#include "quotnet/stats.hpp"

namespace quotnet {

namespace {

double dyad_distance(const CenteredFactor& f, int i, int j) {
  return (f.Y.row(i) - f.Y.row(j)).norm();
}

void check_pair(const DrawSet& draws, int i, int j) {
  const int n = static_cast<int>(draws.n());
  if (i == j) throw InvalidInputError("dyad: i == j");
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw InvalidInputError("dyad: node index out of range");
}

}  // namespace

std::vector<std::pair<int, int>> all_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

std::vector<DyadSummary> dyad_summaries(const DrawSet& draws,
                                        const std::vector<std::pair<int, int>>& pairs,
                                        double level, const LinkFunction* link,
                                        int threads) {
  draws.validate();
  if (!(level > 0.0) || level > 1.0)
    throw InvalidInputError("dyad_summaries: level must lie in (0, 1]");
  if (link != nullptr && !draws.has_intercepts())
    throw InvalidInputError("dyad_summaries: probabilities requested without intercepts");
  for (const auto& [i, j] : pairs) check_pair(draws, i, j);

  const int m = draws.size();
  const double p_lo = (1.0 - level) / 2.0;
  const double p_hi = 1.0 - p_lo;
  std::vector<DyadSummary> out(pairs.size());

  parallel_for(pairs.size(), threads, [&](std::size_t idx) {
    const auto [i, j] = pairs[idx];
    std::vector<double> d(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t)
      d[static_cast<std::size_t>(t)] = dyad_distance(draws.factors[static_cast<std::size_t>(t)], i, j);

    DyadSummary s;
    s.i = i;
    s.j = j;
    s.mean_distance = stats::mean(d);
    s.var_distance = m >= 2 ? stats::variance(d) : 0.0;
    std::vector<double> sorted = d;
    std::sort(sorted.begin(), sorted.end());
    s.median_distance = stats::quantile_sorted(sorted, 0.5);
    s.ci_lo = p_lo > 0.0 ? stats::quantile_sorted(sorted, p_lo) : sorted.front();
    s.ci_hi = stats::quantile_sorted(sorted, p_hi);

    if (link != nullptr) {
      std::vector<double> prob(static_cast<std::size_t>(m));
      double effect = 0.0;
      for (int t = 0; t < m; ++t) {
        const double eta = draws.intercepts[static_cast<std::size_t>(t)] - d[static_cast<std::size_t>(t)];
        prob[static_cast<std::size_t>(t)] = (*link)(eta);
        effect += eta;
      }
      s.has_probability = true;
      s.mean_probability = stats::mean(prob);
      s.mean_link_effect = effect / static_cast<double>(m);
      std::sort(prob.begin(), prob.end());
      s.ci_prob_lo = p_lo > 0.0 ? stats::quantile_sorted(prob, p_lo) : prob.front();
      s.ci_prob_hi = stats::quantile_sorted(prob, p_hi);
    }
    out[idx] = std::move(s);
  });
  return out;
}

NodeUncertainty node_uncertainty(const DrawSet& draws, int threads) {
  draws.validate();
  if (draws.size() < 2)
    throw InvalidInputError("node_uncertainty: need at least two draws");
  const int n = static_cast<int>(draws.n());
  const int m = draws.size();

  // Variance of every unordered dyad; filled in parallel, reduced per row.
  Matrix var = Matrix::Zero(n, n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    std::vector<double> d(static_cast<std::size_t>(m));
    for (int j = static_cast<int>(i) + 1; j < n; ++j) {
      for (int t = 0; t < m; ++t)
        d[static_cast<std::size_t>(t)] =
            dyad_distance(draws.factors[static_cast<std::size_t>(t)], static_cast<int>(i), j);
      var(static_cast<Index>(i), j) = stats::variance(d);
    }
  });

  Vector u = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      s += i < j ? var(i, j) : var(j, i);
    }
    u(i) = s / static_cast<double>(n - 1);
  }
  return NodeUncertainty{std::move(u), "monte-carlo"};
}

NodeUncertainty node_uncertainty(const TangentSample& sample, int threads) {
  if (sample.size() < 2)
    throw InvalidInputError("node_uncertainty: need at least two residuals");
  const int n = static_cast<int>(sample.base.n());
  Matrix var = Matrix::Zero(n, n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    for (int j = static_cast<int>(i) + 1; j < n; ++j)
      var(static_cast<Index>(i), j) =
          delta_variance_distance(sample, static_cast<int>(i), j).variance;
  });
  Vector u = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      s += i < j ? var(i, j) : var(j, i);
    }
    u(i) = s / static_cast<double>(n - 1);
  }
  return NodeUncertainty{std::move(u), "delta"};
}

Vector nodewise_loss(const DrawSet& draws, const GramMatrix& truth, int threads) {
  draws.validate();
  const int n = static_cast<int>(draws.n());
  if (truth.n() != n) throw InvalidInputError("nodewise_loss: truth dimension mismatch");
  const int m = draws.size();
  const Matrix true_dist = distances_from_gram(truth);

  Matrix gap2 = Matrix::Zero(n, n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    for (int j = static_cast<int>(i) + 1; j < n; ++j) {
      double mean_d = 0.0;
      for (int t = 0; t < m; ++t)
        mean_d += dyad_distance(draws.factors[static_cast<std::size_t>(t)], static_cast<int>(i), j);
      mean_d /= static_cast<double>(m);
      const double gap = mean_d - true_dist(static_cast<Index>(i), j);
      gap2(static_cast<Index>(i), j) = gap * gap;
    }
  });
  Vector loss = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      s += i < j ? gap2(i, j) : gap2(j, i);
    }
    loss(i) = s / static_cast<double>(n - 1);
  }
  return loss;
}

SensitivityResult reference_sensitivity(const DrawSet& draws, int k, std::uint64_t seed) {
  draws.validate();
  const int m = draws.size();
  if (k < 2 || k > m)
    throw InvalidInputError("reference_sensitivity: need 2 <= K <= M");

  // K distinct reference indices, uniform without replacement.
  rng::Engine engine(rng::derive(seed, 0x5e1ec7));
  std::vector<int> indices(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) indices[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    const auto j = static_cast<int>(rng::below(engine, static_cast<std::uint64_t>(m - i)));
    std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(i + j)]);
  }
  indices.resize(static_cast<std::size_t>(k));

  std::vector<Matrix> grams;
  grams.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t)
    grams.push_back(procrustes_mean(draws, indices[static_cast<std::size_t>(t)], true,
                                    rng::derive(seed, 0x0e1, static_cast<std::uint64_t>(t)))
                        .mean_gram.B);

  SensitivityResult out;
  out.k = k;
  out.reference_indices = indices;
  double total = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const double gap = (grams[static_cast<std::size_t>(a)] - grams[static_cast<std::size_t>(b)]).norm();
      out.pairwise_gaps.push_back(gap);
      total += gap;
    }
  out.s_ref = total / static_cast<double>(out.pairwise_gaps.size());
  return out;
}

std::vector<AdjacencyMatrix> posterior_predictive(const DrawSet& draws,
                                                  const LinkFunction& link, int count,
                                                  std::uint64_t seed) {
  draws.validate();
  if (!draws.has_intercepts())
    throw InvalidInputError("posterior_predictive: intercept draws are required");
  if (count < 1) throw InvalidInputError("posterior_predictive: count must be >= 1");

  const int n = static_cast<int>(draws.n());
  const int m = draws.size();
  std::vector<AdjacencyMatrix> reps(static_cast<std::size_t>(count));
  for (int t = 0; t < count; ++t) {
    const int d = t % m;
    const CenteredFactor& f = draws.factors[static_cast<std::size_t>(d)];
    const double alpha = draws.intercepts[static_cast<std::size_t>(d)];
    rng::Engine engine(rng::derive(seed, 0x4e9, static_cast<std::uint64_t>(t)));
    AdjacencyMatrix a = AdjacencyMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double p = link(alpha - dyad_distance(f, i, j));
        if (rng::uniform01(engine) < p) {
          a(i, j) = 1;
          a(j, i) = 1;
        }
      }
    reps[static_cast<std::size_t>(t)] = std::move(a);
  }
  return reps;
}

}  // namespace quotnet
