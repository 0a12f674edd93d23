#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace quotnet::rng {

using Engine = std::mt19937_64;

// splitmix64 finalizer.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from (seed, a, b). Used wherever work
// is split across dyads, replicates or chains so that output does not depend
// on evaluation order.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = mix(h ^ (b + 0x517cc1b727220a95ULL));
  return h;
}

// 53-bit uniform in [0, 1). Fixed bit layout keeps streams identical across
// standard libraries, unlike std::uniform_real_distribution.
inline double uniform01(Engine& e) {
  return static_cast<double>(e() >> 11) * 0x1.0p-53;
}

// One standard normal draw via Box-Muller; always consumes two uniforms.
inline double normal(Engine& e) {
  double u1 = uniform01(e);
  const double u2 = uniform01(e);
  while (u1 <= 0.0) u1 = uniform01(e);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.28318530717958647692528676655900577 * u2);
}

// Uniform integer in [0, m), m > 0 (multiply-shift; bias < m / 2^64).
inline std::uint64_t below(Engine& e, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(e()) * static_cast<unsigned __int128>(m)) >> 64);
}

inline Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Engine& e) {
  Eigen::MatrixXd g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = normal(e);
  return g;
}

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the sign
// of diag(R) folded into Q.
inline Eigen::MatrixXd haar_orthogonal(Eigen::Index r, Engine& e) {
  const Eigen::MatrixXd g = gaussian_matrix(r, r, e);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < r; ++j)
    if (rr(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace quotnet::rng
