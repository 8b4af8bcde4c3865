#pragma once

#include <functional>
#include <string>
#include <vector>

#include "netloc/localizability.hpp"
#include "netloc/params.hpp"

namespace netloc {

// Tabulated CDF: abscissae ascending, probabilities nondecreasing.
struct CdfCurve {
  std::vector<double> x;
  std::vector<double> p;
  double support_low = 0.0;
  std::string support_note;
};

// Closed-form distributions support L up to kMaxOrderL; the alternating
// binomial sums lose too much precision beyond that.
inline constexpr int kMaxOrderL = 30;

// CDF of the second largest internodal angle gap given L anchors,
// support [0, pi].
double angle2_cdf(double phi, int l);

// Mean and variance of that order statistic.
double angle2_mean(int l);
double angle2_var(int l);

// Conditional CDF of the benchmark S given L (closed form, support
// [a, inf) with a = sigma_r * sqrt(4/L)). Requires 2 <= L <= kMaxOrderL.
double cond_cdf_s(double s, int l, double sigma_r);

// Three-branch modification: the L >= n_max cap and the unlocalizable step
// at m_error for L <= 2.
double cond_cdf_s_modified(double s, int l, const MarginalParams& mp);

// Network-wide marginal CDF of S, mixing the modified conditional over the
// distribution of L. pmf must cover at least ell = 0..n_max and be
// normalized (entries + tail within 1e-6 of 1).
double marginal_cdf_s(double s, const MarginalParams& mp, const Pmf& pmf);

// Left limit at s (differs from marginal_cdf_s only at the atom s = m_error).
double marginal_cdf_s_left(double s, const MarginalParams& mp, const Pmf& pmf);

CdfCurve tabulate_cdf(const std::function<double(double)>& eval,
                      const std::vector<double>& s_grid);

// Geometric default grid from a*(1+1e-6) to max(10*m_error, 50*a).
std::vector<double> default_s_grid(double a, double m_error, int n_points = 2000);

}  // namespace netloc
