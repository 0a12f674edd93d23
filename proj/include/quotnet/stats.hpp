#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "quotnet/error.hpp"
#include "quotnet/types.hpp"

namespace quotnet::stats {

inline double mean(const std::vector<double>& x) {
  if (x.empty()) throw InvalidInputError("mean: empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

// Unbiased sample variance (denominator m - 1).
inline double variance(const std::vector<double>& x) {
  if (x.size() < 2) throw InvalidInputError("variance: need at least two values");
  const double mu = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - mu) * (v - mu);
  return s / static_cast<double>(x.size() - 1);
}

// Interpolated empirical quantile on sorted data, p in (0, 1]:
// h = (m - 1) p + 1 over 1-based order statistics, linear between them.
inline double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw InvalidInputError("quantile: empty sample");
  if (!(p > 0.0) || p > 1.0) throw InvalidInputError("quantile: level must lie in (0, 1]");
  const double m = static_cast<double>(sorted.size());
  const double h = (m - 1.0) * p + 1.0;
  const auto k = static_cast<std::size_t>(std::floor(h));
  const double g = h - static_cast<double>(k);
  if (k >= sorted.size()) return sorted.back();
  const double lo = sorted[k - 1];
  if (g == 0.0) return lo;
  return lo + g * (sorted[k] - lo);
}

inline double quantile(std::vector<double> x, double p) {
  std::sort(x.begin(), x.end());
  return quantile_sorted(x, p);
}

inline double median(const std::vector<double>& x) { return quantile(x, 0.5); }

inline double pearson(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw InvalidInputError("pearson: mismatched or too-short vectors");
  const double ma = a.mean();
  const double mb = b.mean();
  const Vector da = a.array() - ma;
  const Vector db = b.array() - mb;
  const double denom = std::sqrt(da.squaredNorm() * db.squaredNorm());
  if (denom == 0.0) throw NumericalError("pearson: zero variance input");
  return da.dot(db) / denom;
}

}  // namespace quotnet::stats
