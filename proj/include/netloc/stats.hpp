#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace netloc {

// Pairwise (cascade) summation; error grows O(log n) instead of O(n).
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Exact two-sided Kolmogorov-Smirnov distance between the empirical CDF of
// sorted samples and a model CDF. `cdf_left` supplies the left limit and only
// differs from `cdf` at atoms. Non-finite samples are skipped by the caller's
// bookkeeping; here they simply must not appear.
inline double ks_distance(std::span<const double> sorted_samples,
                          const std::function<double(double)>& cdf,
                          const std::function<double(double)>& cdf_left) {
  const double n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double x = sorted_samples[i];
    const double fx = cdf(x);
    const double fxl = cdf_left(x);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - fx);
    d = std::max(d, fxl - static_cast<double>(i) / n);
  }
  return d;
}

inline double ks_distance(std::span<const double> sorted_samples,
                          const std::function<double(double)>& cdf) {
  return ks_distance(sorted_samples, cdf, cdf);
}

// Two-sample KS distance; both inputs ascending.
inline double ks_two_sample(std::span<const double> a,
                            std::span<const double> b) {
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace netloc
