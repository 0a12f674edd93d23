#include "quotnet/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "quotnet/parallel.hpp"
#include "quotnet/rng.hpp"
#include "quotnet/stats.hpp"

namespace quotnet {

namespace {

struct AlignPass {
  Matrix mean_aligned;  // (1/M) sum of Y_m R_m
  Vector distances;     // per-draw quotient distances to the iterate
  double objective = 0.0;
};

// One sweep of Procrustes alignments against the iterate. Per-draw work runs
// in parallel into indexed slots; sums are taken in index order afterwards.
AlignPass align_pass(const DrawSet& draws, const CenteredFactor& y, int threads) {
  const int m = draws.size();
  std::vector<Matrix> aligned(static_cast<std::size_t>(m));
  Vector dist(m);
  parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t i) {
    const ProcrustesResult pr = procrustes_align(y, draws.factors[i]);
    aligned[i] = draws.factors[i].Y * pr.rotation;
    dist(static_cast<Index>(i)) = pr.residual;
  });
  Matrix sum = Matrix::Zero(y.n(), y.r());
  double obj = 0.0;
  for (int i = 0; i < m; ++i) {
    sum += aligned[static_cast<std::size_t>(i)];
    obj += dist(i) * dist(i);
  }
  return AlignPass{sum / static_cast<double>(m), std::move(dist),
                   obj / static_cast<double>(m)};
}

CenteredFactor initial_factor(const DrawSet& draws, const FrechetConfig& config,
                              int threads) {
  if (config.init == FrechetConfig::Init::DrawIndex) {
    if (config.init_index < 0 || config.init_index >= draws.size())
      throw InvalidInputError("frechet_mean: init draw index out of range");
    return draws.factors[static_cast<std::size_t>(config.init_index)];
  }
  // Rank-r eigendecomposition of the average Gram matrix.
  const Index n = draws.n();
  const Index r = draws.r();
  Matrix mean_gram = Matrix::Zero(n, n);
  for (const auto& f : draws.factors) mean_gram += f.Y * f.Y.transpose();
  mean_gram /= static_cast<double>(draws.size());
  mean_gram = 0.5 * (mean_gram + mean_gram.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(mean_gram);
  const double tr = std::max(0.0, mean_gram.trace());
  // Eigenvalues ascend in Eigen; the top r live at the end.
  const double lambda_r = es.eigenvalues()(n - r);
  if (lambda_r <= kPsdTol * std::max(tr, 1e-300)) {
    // Average Gram is effectively below rank r; fall back to the medoid draw.
    return draws.factors[static_cast<std::size_t>(quotient_medoid(draws, threads))];
  }
  Matrix y(n, r);
  for (Index k = 0; k < r; ++k) {
    const Index src = n - 1 - k;
    y.col(k) = es.eigenvectors().col(src) * std::sqrt(std::max(0.0, es.eigenvalues()(src)));
  }
  y.rowwise() -= y.colwise().mean().eval();
  return CenteredFactor{std::move(y)};
}

}  // namespace

void FrechetConfig::validate() const {
  if (!(step_size > 0.0)) throw InvalidInputError("FrechetConfig: step_size must be > 0");
  if (!(tolerance > 0.0)) throw InvalidInputError("FrechetConfig: tolerance must be > 0");
  if (max_iterations < 1) throw InvalidInputError("FrechetConfig: max_iterations must be >= 1");
  if (max_halvings < 0) throw InvalidInputError("FrechetConfig: max_halvings must be >= 0");
}

FrechetResult frechet_mean(const DrawSet& draws, const FrechetConfig& config) {
  config.validate();
  draws.validate();

  CenteredFactor y = initial_factor(draws, config, config.threads);
  AlignPass pass = align_pass(draws, y, config.threads);

  FrechetResult result;
  result.objective_trace.push_back(pass.objective);

  bool converged = false;
  int iterations = 0;
  while (iterations < config.max_iterations) {
    ++iterations;
    const Matrix z = pass.mean_aligned - y.Y;
    const double stop_scale = config.tolerance * std::max(1.0, y.Y.norm());
    if (config.step_size * z.norm() < stop_scale) {
      // The projected step can only be shorter than z.
      converged = true;
      break;
    }
    const Matrix z_hor = horizontal_project(y, z);
    if (config.step_size * z_hor.norm() < stop_scale) {
      converged = true;
      break;
    }

    double eta = config.step_size;
    bool accepted = false;
    CenteredFactor candidate;
    AlignPass candidate_pass;
    const int tries = config.backtracking ? config.max_halvings + 1 : 1;
    for (int h = 0; h < tries; ++h) {
      candidate = retract(y, eta * z_hor);
      candidate_pass = align_pass(draws, candidate, config.threads);
      if (!config.backtracking || candidate_pass.objective <= pass.objective + 1e-12) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;  // no descent direction left at this resolution
    y = std::move(candidate);
    pass = std::move(candidate_pass);
    result.objective_trace.push_back(pass.objective);
  }

  result.iterations = iterations;
  result.converged = converged;
  result.per_draw_distances = pass.distances;
  result.variation = pass.objective;
  Matrix b = y.Y * y.Y.transpose();
  result.mean_gram = GramMatrix{0.5 * (b + b.transpose()), static_cast<int>(y.r())};
  result.mean_factor = std::move(y);
  return result;
}

double frechet_variation(const FrechetResult& result) {
  const Index m = result.per_draw_distances.size();
  if (m == 0) throw InvalidInputError("frechet_variation: empty result");
  double s = 0.0;
  for (Index i = 0; i < m; ++i)
    s += result.per_draw_distances(i) * result.per_draw_distances(i);
  return s / static_cast<double>(m);
}

double credible_radius(const FrechetResult& result, double level) {
  if (!(level > 0.0) || level > 1.0)
    throw InvalidInputError("credible_radius: level must lie in (0, 1]");
  std::vector<double> d(result.per_draw_distances.data(),
                        result.per_draw_distances.data() + result.per_draw_distances.size());
  if (d.empty()) throw InvalidInputError("credible_radius: no per-draw distances");
  std::sort(d.begin(), d.end());
  return stats::quantile_sorted(d, level);
}

int quotient_medoid(const DrawSet& draws, int threads) {
  draws.validate();
  const int m = draws.size();
  if (m == 1) return 0;
  Matrix d2 = Matrix::Zero(m, m);
  // Upper triangle in parallel over rows, then mirrored.
  parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t i) {
    for (int j = static_cast<int>(i) + 1; j < m; ++j) {
      const double d = quotient_distance(draws.factors[i], draws.factors[static_cast<std::size_t>(j)]);
      d2(static_cast<Index>(i), j) = d * d;
    }
  });
  int best = 0;
  double best_sum = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += i < j ? d2(i, j) : d2(j, i);
    if (s < best_sum) {
      best_sum = s;
      best = i;
    }
  }
  return best;
}

ProcrustesMeanResult procrustes_mean(const DrawSet& draws, int reference,
                                     bool randomize_orientation, std::uint64_t seed) {
  draws.validate();
  const int m = draws.size();
  if (reference < 0 || reference >= m)
    throw InvalidInputError("procrustes_mean: reference index out of range");

  std::vector<CenteredFactor> factors = draws.factors;
  if (randomize_orientation) {
    rng::Engine engine(seed);
    for (auto& f : factors) f.Y = f.Y * rng::haar_orthogonal(f.r(), engine);
  }
  const CenteredFactor& ref = factors[static_cast<std::size_t>(reference)];
  Matrix sum = Matrix::Zero(ref.n(), ref.r());
  for (int i = 0; i < m; ++i) {
    const ProcrustesResult pr = procrustes_align(ref, factors[static_cast<std::size_t>(i)]);
    sum += factors[static_cast<std::size_t>(i)].Y * pr.rotation;
  }
  Matrix mean = sum / static_cast<double>(m);
  Matrix b = mean * mean.transpose();
  return ProcrustesMeanResult{std::move(mean),
                              GramMatrix{0.5 * (b + b.transpose()), static_cast<int>(ref.r())}};
}

}  // namespace quotnet
