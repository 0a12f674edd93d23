#include "quotnet/types.hpp"

#include <cmath>
#include <string>

namespace quotnet {

bool all_finite(const Matrix& m) { return m.allFinite(); }

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite())
    throw InvalidInputError(std::string(what) + ": non-finite entries");
}

bool is_centered(const Matrix& y, double tol) {
  if (y.rows() == 0) return true;
  const double scale =
      tol * static_cast<double>(y.rows()) * std::max(1e-30, y.cwiseAbs().maxCoeff());
  return (y.colwise().sum().cwiseAbs().maxCoeff() <= scale);
}

bool is_horizontal(const CenteredFactor& base, const Matrix& z, double tol) {
  if (base.Y.rows() != z.rows() || base.Y.cols() != z.cols()) return false;
  if (!is_centered(z)) return false;
  const Matrix cross = base.Y.transpose() * z;
  const double scale = tol * std::max(1e-30, base.Y.norm() * z.norm());
  return (cross - cross.transpose()).norm() <= scale;
}

bool has_full_column_rank(const Matrix& y, double ratio_tol) {
  if (y.cols() == 0 || y.rows() < y.cols()) return false;
  Eigen::JacobiSVD<Matrix> svd(y);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1) > ratio_tol * sv(0);
}

CenteredFactor CenteredFactor::checked(Matrix factor) {
  require_finite(factor, "CenteredFactor");
  if (factor.rows() < 2 || factor.cols() < 1)
    throw InvalidInputError("CenteredFactor: need n >= 2 rows and r >= 1 columns");
  if (!is_centered(factor))
    throw InvalidInputError("CenteredFactor: column sums are not zero");
  return CenteredFactor{std::move(factor)};
}

void DrawSet::validate() const {
  if (factors.empty()) throw InvalidInputError("DrawSet: no draws");
  const Index nn = factors.front().n();
  const Index rr = factors.front().r();
  for (const auto& f : factors) {
    if (f.n() != nn || f.r() != rr)
      throw InvalidInputError("DrawSet: draws disagree on (n, r)");
    require_finite(f.Y, "DrawSet factor");
    if (!is_centered(f.Y)) throw InvalidInputError("DrawSet: factor not centered");
  }
  if (!intercepts.empty()) {
    if (intercepts.size() != factors.size())
      throw InvalidInputError("DrawSet: intercept count differs from draw count");
    for (double a : intercepts)
      if (!std::isfinite(a)) throw InvalidInputError("DrawSet: non-finite intercept");
  }
}

void validate_gram(const GramMatrix& g) {
  const Matrix& b = g.B;
  require_finite(b, "GramMatrix");
  if (b.rows() != b.cols()) throw InvalidInputError("GramMatrix: not square");
  const double scale = std::max(1e-30, b.cwiseAbs().maxCoeff());
  if ((b - b.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidInputError("GramMatrix: not symmetric");
  if (b.rowwise().sum().cwiseAbs().maxCoeff() >
      1e-10 * static_cast<double>(b.rows()) * scale)
    throw InvalidInputError("GramMatrix: row sums are not zero");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (b + b.transpose()),
                                           Eigen::EigenvaluesOnly);
  const double tr = std::max(0.0, b.trace());
  const double floor = kPsdTol * std::max(tr, 1e-30);
  if (es.eigenvalues().minCoeff() < -floor)
    throw InvalidInputError("GramMatrix: negative eigenvalue beyond tolerance");
  int above = 0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > floor) ++above;
  if (above > g.rank_bound)
    throw InvalidInputError("GramMatrix: numerical rank exceeds the rank bound");
}

void validate_adjacency(const AdjacencyMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInputError("adjacency: not square");
  for (Index i = 0; i < a.rows(); ++i) {
    if (a(i, i) != 0) throw InvalidInputError("adjacency: nonzero diagonal");
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0 && a(i, j) != 1)
        throw InvalidInputError("adjacency: entries must be 0 or 1");
      if (a(i, j) != a(j, i)) throw InvalidInputError("adjacency: not symmetric");
    }
  }
}

}  // namespace quotnet
