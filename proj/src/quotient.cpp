#include "quotnet/quotient.hpp"

#include <cmath>
#include <string>

namespace quotnet {

namespace {

// Lyapunov solve given the eigendecomposition S = Q diag(lambda) Q^T.
Matrix lyapunov_from_eigen(const Matrix& q, const Vector& lambda, const Matrix& skew) {
  Matrix c = q.transpose() * skew * q;
  for (Index i = 0; i < c.rows(); ++i)
    for (Index j = 0; j < c.cols(); ++j) c(i, j) /= lambda(i) + lambda(j);
  Matrix w = q * c * q.transpose();
  return 0.5 * (w - w.transpose());
}

}  // namespace

CenteredFactor center_configuration(const Configuration& x) {
  require_finite(x, "center_configuration");
  if (x.rows() < 2 || x.cols() < 1)
    throw InvalidInputError("center_configuration: need n >= 2 and r >= 1");
  Matrix y = x;
  y.rowwise() -= x.colwise().mean();
  return CenteredFactor{std::move(y)};
}

GramMatrix gram_of(const Configuration& x) {
  const CenteredFactor y = center_configuration(x);
  Matrix b = y.Y * y.Y.transpose();
  b = 0.5 * (b + b.transpose()).eval();
  return GramMatrix{std::move(b), static_cast<int>(x.cols())};
}

Matrix squared_distances_from_gram(const GramMatrix& g) {
  const Matrix& b = g.B;
  const Index n = b.rows();
  Matrix d2(n, n);
  for (Index i = 0; i < n; ++i) {
    d2(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double v = std::max(0.0, b(i, i) + b(j, j) - 2.0 * b(i, j));
      d2(i, j) = v;
      d2(j, i) = v;
    }
  }
  return d2;
}

Matrix distances_from_gram(const GramMatrix& g) {
  return squared_distances_from_gram(g).cwiseSqrt();
}

MdsResult gram_from_squared_distances(const Matrix& squared_distances) {
  const Matrix& d = squared_distances;
  require_finite(d, "gram_from_squared_distances");
  if (d.rows() != d.cols())
    throw InvalidInputError("gram_from_squared_distances: not square");
  const double scale = std::max(1e-30, d.cwiseAbs().maxCoeff());
  if ((d - d.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidInputError("gram_from_squared_distances: not symmetric");
  if (d.diagonal().cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidInputError("gram_from_squared_distances: nonzero diagonal");
  if (d.minCoeff() < -1e-10 * scale)
    throw InvalidInputError("gram_from_squared_distances: negative entries");

  // Double centering without materializing H: subtract row and column means,
  // add back the grand mean.
  const Index n = d.rows();
  const Vector row_mean = d.rowwise().mean();
  const double grand_mean = d.mean();
  Matrix b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      b(i, j) = -0.5 * (d(i, j) - row_mean(i) - row_mean(j) + grand_mean);
  b = 0.5 * (b + b.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es(b, Eigen::EigenvaluesOnly);
  const double tr = std::max(0.0, b.trace());
  int rank = 0;
  for (Index i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > kPsdTol * std::max(tr, 1e-30)) ++rank;
  return MdsResult{GramMatrix{std::move(b), rank}, es.eigenvalues().minCoeff()};
}

ProcrustesResult procrustes_align(const CenteredFactor& y1, const CenteredFactor& y2) {
  if (y1.n() != y2.n() || y1.r() != y2.r())
    throw InvalidInputError("procrustes_align: shape mismatch");
  const Matrix cross = y2.Y.transpose() * y1.Y;
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix rotation = svd.matrixU() * svd.matrixV().transpose();
  if (!rotation.allFinite())
    throw NumericalError("procrustes_align: SVD produced non-finite rotation (||Y2^T Y1|| = " +
                         std::to_string(cross.norm()) + ")");
  const double residual = (y1.Y - y2.Y * rotation).norm();
  return ProcrustesResult{std::move(rotation), residual};
}

double quotient_distance(const CenteredFactor& y1, const CenteredFactor& y2) {
  return procrustes_align(y1, y2).residual;
}

Matrix solve_lyapunov(const Matrix& spd, const Matrix& skew) {
  if (spd.rows() != spd.cols() || skew.rows() != skew.cols() ||
      spd.rows() != skew.rows())
    throw InvalidInputError("solve_lyapunov: shape mismatch");
  require_finite(spd, "solve_lyapunov S");
  require_finite(skew, "solve_lyapunov C");
  const double skew_scale = std::max(1e-30, skew.cwiseAbs().maxCoeff());
  if ((skew + skew.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, skew_scale))
    throw InvalidInputError("solve_lyapunov: C is not skew-symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (spd + spd.transpose()));
  const double lambda_min = es.eigenvalues().minCoeff();
  if (lambda_min <= kSpdTol * std::max(spd.trace(), 1e-300))
    throw RankDeficiencyError(
        "solve_lyapunov: S is not positive definite (smallest eigenvalue " +
        std::to_string(lambda_min) + ")");
  return lyapunov_from_eigen(es.eigenvectors(), es.eigenvalues(), skew);
}

Matrix horizontal_project(const CenteredFactor& base, const Matrix& z) {
  if (z.rows() != base.n() || z.cols() != base.r())
    throw InvalidInputError("horizontal_project: shape mismatch");
  require_finite(z, "horizontal_project");
  // Centering residue is judged against the larger of the perturbation and
  // the base scale: differences of centered factors carry base-sized noise.
  const double centering_scale =
      kCenteringTol * static_cast<double>(z.rows()) *
      std::max({1e-30, z.cwiseAbs().maxCoeff(), base.Y.cwiseAbs().maxCoeff()});
  if (z.colwise().sum().cwiseAbs().maxCoeff() > centering_scale)
    throw InvalidInputError("horizontal_project: perturbation is not centered");

  const Matrix s = base.Y.transpose() * base.Y;
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const Vector& lambda = es.eigenvalues();
  // lambda are squared singular values of the base factor.
  const double sigma_min = std::sqrt(std::max(0.0, lambda.minCoeff()));
  const double sigma_max = std::sqrt(std::max(0.0, lambda.maxCoeff()));
  if (sigma_min <= kRankRatioTol * sigma_max || sigma_max == 0.0)
    throw RankDeficiencyError(
        "horizontal_project: base factor is rank deficient (sigma_min " +
        std::to_string(sigma_min) + ")");

  const Matrix skew = base.Y.transpose() * z - z.transpose() * base.Y;
  const Matrix omega = lyapunov_from_eigen(es.eigenvectors(), lambda, skew);
  return z - base.Y * omega;
}

CenteredFactor retract(const CenteredFactor& base, const Matrix& step) {
  if (step.rows() != base.n() || step.cols() != base.r())
    throw InvalidInputError("retract: shape mismatch");
  require_finite(step, "retract");
  Matrix y = base.Y + step;
  y.rowwise() -= y.colwise().mean().eval();
  return CenteredFactor{std::move(y)};
}

Matrix log_lift(const CenteredFactor& from, const CenteredFactor& to) {
  const ProcrustesResult aligned = procrustes_align(from, to);
  const Matrix z = to.Y * aligned.rotation - from.Y;
  return horizontal_project(from, z);
}

}  // namespace quotnet
