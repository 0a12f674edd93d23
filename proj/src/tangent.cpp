#include "quotnet/tangent.hpp"

#include <cmath>

#include "quotnet/parallel.hpp"
#include "quotnet/stats.hpp"

namespace quotnet {

TangentSample tangent_residuals(const CenteredFactor& base, const DrawSet& draws) {
  draws.validate();
  if (base.n() != draws.n() || base.r() != draws.r())
    throw InvalidInputError("tangent_residuals: base shape disagrees with draws");
  if (!has_full_column_rank(base.Y))
    throw RankDeficiencyError("tangent_residuals: base factor is rank deficient");

  TangentSample sample;
  sample.base = base;
  sample.residuals.reserve(static_cast<std::size_t>(draws.size()));
  for (int m = 0; m < draws.size(); ++m) {
    const CenteredFactor& f = draws.factors[static_cast<std::size_t>(m)];
    if (!has_full_column_rank(f.Y)) {
      // Local linearization is restricted to draws on the rank-r stratum.
      ++sample.excluded_count;
      continue;
    }
    sample.residuals.push_back(log_lift(base, f));
    sample.draw_indices.push_back(m);
  }
  return sample;
}

TangentCovariance tangent_covariance(const TangentSample& sample) {
  const int m = sample.size();
  if (m < 2) throw InvalidInputError("tangent_covariance: need at least two residuals");
  const int n = static_cast<int>(sample.base.n());
  const int r = static_cast<int>(sample.base.r());
  const Index dim = static_cast<Index>(n) * r;

  Matrix cov = Matrix::Zero(dim, dim);
  for (const Matrix& xi : sample.residuals) {
    const Eigen::Map<const Vector> v(xi.data(), dim);
    cov.noalias() += v * v.transpose();
  }
  cov /= static_cast<double>(m - 1);
  cov = 0.5 * (cov + cov.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  TangentCovariance out;
  out.matrix = std::move(cov);
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  // Sign convention: the largest-magnitude entry of each eigenvector is
  // positive (first such entry wins on exact ties).
  for (Index j = 0; j < out.eigenvectors.cols(); ++j) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < out.eigenvectors.rows(); ++i) {
      const double a = std::abs(out.eigenvectors(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (out.eigenvectors(arg, j) < 0.0) out.eigenvectors.col(j) = -out.eigenvectors.col(j);
  }
  out.n = n;
  out.r = r;
  out.base = sample.base;
  return out;
}

std::vector<std::pair<double, Matrix>> principal_directions(const TangentCovariance& cov,
                                                            int k) {
  const Index dim = static_cast<Index>(cov.n) * cov.r;
  if (k < 1 || k > dim)
    throw InvalidInputError("principal_directions: k must lie in [1, n*r]");
  std::vector<std::pair<double, Matrix>> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    Matrix dir = Eigen::Map<const Matrix>(cov.eigenvectors.col(j).data(), cov.n, cov.r);
    // Guard: null-space eigenvectors may carry centered-complement noise.
    dir.rowwise() -= dir.colwise().mean().eval();
    dir = horizontal_project(cov.base, dir);
    out.emplace_back(cov.eigenvalues(j), std::move(dir));
  }
  return out;
}

DeltaVariance delta_variance_distance(const TangentSample& sample, int i, int j) {
  const int n = static_cast<int>(sample.base.n());
  if (i == j) throw InvalidInputError("delta_variance_distance: i == j");
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw InvalidInputError("delta_variance_distance: node index out of range");
  if (sample.size() < 2)
    throw InvalidInputError("delta_variance_distance: need at least two residuals");

  const Vector gap = (sample.base.Y.row(i) - sample.base.Y.row(j)).transpose();
  const double dist = gap.norm();
  // Degenerate-distance threshold, scaled by the configuration size.
  const double delta_d =
      1e-8 * std::sqrt(sample.base.Y.squaredNorm() / static_cast<double>(n));

  // For E = xi Y^T + Y xi^T, E_ii + E_jj - 2 E_ij = 2 (xi_i - xi_j) . (y_i - y_j).
  std::vector<double> pushed;
  pushed.reserve(sample.residuals.size());
  const bool squared = dist <= delta_d;
  for (const Matrix& xi : sample.residuals) {
    const double dsq = 2.0 * (xi.row(i) - xi.row(j)).dot(gap.transpose());
    pushed.push_back(squared ? dsq : dsq / (2.0 * dist));
  }
  return DeltaVariance{stats::variance(pushed), squared};
}

}  // namespace quotnet
