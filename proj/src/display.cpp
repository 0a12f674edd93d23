#include "quotnet/display.hpp"

#include <cmath>

#include "quotnet/quotient.hpp"

namespace quotnet {

Matrix embed_mean(const GramMatrix& gram) {
  require_finite(gram.B, "embed_mean");
  const Index n = gram.n();
  const Index r = std::min<Index>(std::max(gram.rank_bound, 0), n);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram.B + gram.B.transpose()));

  Matrix x = Matrix::Zero(n, r);
  for (Index k = 0; k < r; ++k) {
    const Index src = n - 1 - k;  // eigenvalues ascend; walk from the top
    const double lambda = std::max(0.0, es.eigenvalues()(src));
    x.col(k) = es.eigenvectors().col(src) * std::sqrt(lambda);
  }
  for (Index k = 0; k < r; ++k) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < n; ++i) {
      const double a = std::abs(x(i, k));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (x(arg, k) < 0.0) x.col(k) = -x.col(k);
  }
  return x;
}

std::vector<Matrix> align_for_display(const DrawSet& draws, const CenteredFactor& mean_factor) {
  draws.validate();
  if (draws.n() != mean_factor.n() || draws.r() != mean_factor.r())
    throw InvalidInputError("align_for_display: shape mismatch");
  std::vector<Matrix> aligned;
  aligned.reserve(static_cast<std::size_t>(draws.size()));
  for (const auto& f : draws.factors) {
    const ProcrustesResult pr = procrustes_align(mean_factor, f);
    aligned.push_back(f.Y * pr.rotation);
  }
  return aligned;
}

}  // namespace quotnet
