#include "netloc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace netloc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

void check_order(int l) {
  if (l < 2) throw std::domain_error("closed-form distributions need L >= 2");
  if (l > kMaxOrderL)
    throw std::domain_error("closed-form distributions support L <= 30 only");
}

// Row of binomial coefficients C(l, 0..l); exact in double for l <= 30.
std::vector<double> binomial_row(int l) {
  std::vector<double> c(static_cast<std::size_t>(l) + 1);
  c[0] = 1.0;
  for (int n = 1; n <= l; ++n) c[n] = c[n - 1] * (l - n + 1) / n;
  return c;
}

}  // namespace

double angle2_cdf(double phi, int l) {
  check_order(l);
  if (!(phi >= 0.0 && phi <= kPi))
    throw std::domain_error("angle2_cdf: phi must lie in [0, pi]");
  if (phi == 0.0) return 0.0;

  // floor with a relative guard so phi = 2pi/n lands in the n bucket
  const int n_cut =
      static_cast<int>(std::floor((kTwoPi / phi) * (1.0 + 1e-12)));
  const int n_max = std::min(l, n_cut);

  const std::vector<double> c = binomial_row(l);
  double sum = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;  // (-1)^(n-1)
    const double base = std::max(1.0 - n * phi / kTwoPi, 0.0);
    sum += sign * c[n] * (n - 1) * std::pow(base, l - 1);
  }
  return std::clamp(sum, 0.0, 1.0);
}

double angle2_mean(int l) {
  check_order(l);
  const std::vector<double> c = binomial_row(l);
  double sum = 0.0;
  for (int n = 2; n <= l; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    sum += sign * c[n] * kTwoPi * (n - 1) / (static_cast<double>(n) * l);
  }
  return sum;
}

double angle2_var(int l) {
  check_order(l);
  const std::vector<double> c = binomial_row(l);
  double inner = 0.0;
  for (int n = 2; n <= l; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    inner += sign * c[n] * (n - 1) / (static_cast<double>(n) * n);
  }
  const double second_moment =
      8.0 * kPi * kPi / (static_cast<double>(l) * (l + 1)) * inner;
  const double mean = angle2_mean(l);
  return second_moment - mean * mean;
}

double cond_cdf_s(double s, int l, double sigma_r) {
  check_order(l);
  if (sigma_r <= 0.0) throw std::domain_error("sigma_r must be positive");
  const double a = sigma_r * std::sqrt(4.0 / l);
  if (!(s > a)) return 0.0;
  const double phi1 = std::asin(std::min(a / s, 1.0));
  const double phi2 = kPi - phi1;
  return std::clamp(angle2_cdf(phi2, l) - angle2_cdf(phi1, l), 0.0, 1.0);
}

double cond_cdf_s_modified(double s, int l, const MarginalParams& mp) {
  if (l < 0) throw std::domain_error("anchor count cannot be negative");
  if (l >= mp.n_max) return cond_cdf_s(s, mp.n_max, mp.sigma_r);
  if (l >= 3) return cond_cdf_s(s, l, mp.sigma_r);
  return s >= mp.m_error ? 1.0 : 0.0;
}

namespace {

double marginal_eval(double s, const MarginalParams& mp, const Pmf& pmf,
                     bool include_atom_at_s) {
  mp.validate();
  const int n = mp.n_max;
  if (pmf.ell_max() < n)
    throw std::invalid_argument("pmf must cover ell = 0.." +
                                std::to_string(n));
  double total = pmf.tail_mass;
  for (double p : pmf.probs) total += p;
  if (std::abs(total - 1.0) > 1e-6)
    throw std::invalid_argument("pmf is not normalized");

  double p_ge_n = pmf.tail_mass;
  for (int ell = n; ell <= pmf.ell_max(); ++ell) p_ge_n += pmf.probs[ell];
  const double p_le_2 = pmf.probs[0] + pmf.probs[1] + pmf.probs[2];

  double acc = cond_cdf_s(s, n, mp.sigma_r) * p_ge_n;
  for (int ell = 3; ell < n; ++ell)
    acc += cond_cdf_s(s, ell, mp.sigma_r) * pmf.probs[ell];
  const bool step = include_atom_at_s ? (s >= mp.m_error) : (s > mp.m_error);
  if (step) acc += p_le_2;
  return acc;
}

}  // namespace

double marginal_cdf_s(double s, const MarginalParams& mp, const Pmf& pmf) {
  return marginal_eval(s, mp, pmf, true);
}

double marginal_cdf_s_left(double s, const MarginalParams& mp, const Pmf& pmf) {
  return marginal_eval(s, mp, pmf, false);
}

CdfCurve tabulate_cdf(const std::function<double(double)>& eval,
                      const std::vector<double>& s_grid) {
  if (s_grid.empty()) throw std::invalid_argument("tabulate_cdf: empty grid");
  CdfCurve out;
  out.x = s_grid;
  out.p.reserve(s_grid.size());
  double prev_x = s_grid.front();
  double prev_p = -1.0;
  for (double x : s_grid) {
    if (x < prev_x)
      throw std::invalid_argument("tabulate_cdf: grid must be ascending");
    prev_x = x;
    const double p = eval(x);
    // Assertion tolerance sits at the documented tail precision of the
    // closed-form evaluators (the alternating sums carry up to ~2^L ulp of
    // cancellation noise, ~4e-7 at L = 30); genuine defects show up orders
    // of magnitude above it.
    if (p < prev_p - 1e-6)
      throw std::logic_error("tabulate_cdf: evaluator is not nondecreasing");
    prev_p = p;
    out.p.push_back(p);
  }
  out.support_low = s_grid.front();
  return out;
}

std::vector<double> default_s_grid(double a, double m_error, int n_points) {
  if (a <= 0.0) throw std::domain_error("support edge must be positive");
  if (n_points < 2) throw std::domain_error("need at least two grid points");
  const double lo = a * (1.0 + 1e-6);
  const double hi = std::max(10.0 * m_error, 50.0 * a);
  if (hi <= lo) throw std::domain_error("degenerate grid range");
  std::vector<double> grid(static_cast<std::size_t>(n_points));
  const double ratio = std::log(hi / lo) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) grid[i] = lo * std::exp(ratio * i);
  grid.back() = hi;
  return grid;
}

}  // namespace netloc
