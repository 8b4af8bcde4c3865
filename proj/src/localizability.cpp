#include "netloc/localizability.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "netloc/errors.hpp"

namespace netloc {

namespace {

struct GaussLegendre {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

GaussLegendre make_gauss_legendre(int n) {
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p0 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    gl.x[i] = -z;
    gl.x[n - 1 - i] = z;
    gl.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    gl.w[n - 1 - i] = gl.w[i];
  }
  return gl;
}

const GaussLegendre& gl20() {
  static const GaussLegendre gl = make_gauss_legendre(20);
  return gl;
}

// Normalized interference profile of the dominant-interferer bound, as a
// function of the distance ratio u = r_1 / r_ell. Strictly decreasing on
// (0, 1) with h(0+) = inf and h(1) = omega.
double h_omega(double u, double alpha, int omega) {
  const double u_ma = std::pow(u, -alpha);
  if (omega == 1) return u_ma;
  const double one_m_u2 = 1.0 - u * u;
  const double ratio = one_m_u2 < 1e-12 ? (alpha - 2.0) / 2.0
                                        : (u_ma * u * u - 1.0) / one_m_u2;
  return u_ma + 2.0 * (omega - 1) / (alpha - 2.0) * ratio;
}

// Solves h_omega(u) = c on (0, 1]; bracket valid whenever c >= omega.
double root_u_star(double c, double alpha, int omega) {
  if (!(c > omega)) return 1.0;
  double lo = 0.5, hi = 1.0;
  while (h_omega(lo, alpha, omega) < c) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-300) return lo;
  }
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (h_omega(mid, alpha, omega) >= c ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Integral part of the hearability bound for one omega, in the scale-free
// variables u = r_1/r_ell and t = lambda*pi*r_ell^2 (the density cancels):
//   (1/(ell-1)!) * int_0^tcut t^(ell-1) e^(-t) (1 - u*(t)^2)^omega dt,
// where u*(t) is the indicator boundary. The indicator is feasible only for
// t <= tmax(omega); beyond min(tmax, ell + 12*sqrt(ell) + 35) the Gamma
// weight carries no mass at working precision.
double integral_term(int ell, int omega, double alpha, double c0, double q,
                     double panel_width, int min_panels) {
  const double tmax = (c0 - omega) * (alpha - 2.0) / (2.0 * q);
  if (tmax <= 0.0) return 0.0;
  const double tcut = std::min(tmax, ell + 12.0 * std::sqrt(ell) + 35.0);
  const int n_panels =
      std::max(min_panels, static_cast<int>(std::ceil(tcut / panel_width)));
  const double lg = std::lgamma(static_cast<double>(ell));
  const GaussLegendre& gl = gl20();

  double acc = 0.0;
  for (int p = 0; p < n_panels; ++p) {
    const double a = tcut * p / n_panels;
    const double b = tcut * (p + 1) / n_panels;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double panel = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double t = mid + half * gl.x[i];
      const double c = c0 - 2.0 * q * t / (alpha - 2.0);
      const double u = root_u_star(c, alpha, omega);
      const double weight = std::exp((ell - 1) * std::log(t) - t - lg);
      panel += gl.w[i] * weight * std::pow(1.0 - u * u, omega);
    }
    acc += panel * half;
  }
  return acc;
}

double binom(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - i + 1) / i;
  return c;
}

double p_l_geq_at_width(int ell, const NetworkParams& np, double panel_width,
                        int min_panels) {
  const double c0 = np.gamma / np.beta;
  const double x = (np.alpha - 2.0) * c0 / (2.0 * np.q);

  double cdf = 0.0;
  for (int n = 0; n < ell; ++n)
    cdf += std::exp(n * std::log(x) - x - std::lgamma(n + 1.0));
  const double poisson_tail = std::clamp(1.0 - cdf, 0.0, 1.0);

  double result = poisson_tail * std::pow(1.0 - np.q, ell - 1);
  for (int omega = 1; omega <= ell - 1; ++omega) {
    const double f_omega = binom(ell - 1, omega) * std::pow(np.q, omega) *
                           std::pow(1.0 - np.q, ell - 1 - omega);
    if (f_omega == 0.0) continue;
    result += f_omega * integral_term(ell, omega, np.alpha, c0, np.q,
                                      panel_width, min_panels);
  }
  return std::clamp(result, 0.0, 1.0);
}

}  // namespace

double p_l_geq(int ell, const NetworkParams& np) {
  np.validate();
  if (ell <= 0) return 1.0;
  if (np.q == 0.0) return 1.0;  // no interference: every anchor is hearable

  const double coarse = p_l_geq_at_width(ell, np, 2.5, 1);
  const double fine = p_l_geq_at_width(ell, np, 1.25, 2);
  const double diff = std::abs(coarse - fine);
  if (diff > 1e-9)
    throw QuadratureError(
        "hearability integral did not converge at ell = " + std::to_string(ell),
        diff);
  return fine;
}

double Pmf::p_leq(int ell) const {
  if (ell < 0) return 0.0;
  double acc = 0.0;
  for (int i = 0; i <= std::min(ell, ell_max()); ++i) acc += probs[i];
  return acc;
}

double Pmf::p_geq(int ell) const {
  if (ell <= 0) return 1.0;
  if (ell > ell_max() + 1)
    throw std::out_of_range("p_geq: ell beyond truncation range");
  double acc = tail_mass;
  for (int i = ell; i <= ell_max(); ++i) acc += probs[i];
  return acc;
}

Pmf pmf_of_l(const NetworkParams& np, int ell_max) {
  if (ell_max < 3) throw std::domain_error("ell_max must be at least 3");
  std::vector<double> tails(static_cast<std::size_t>(ell_max) + 2);
  for (int ell = 0; ell <= ell_max + 1; ++ell)
    tails[ell] = p_l_geq(ell, np);

  Pmf out;
  out.probs.resize(static_cast<std::size_t>(ell_max) + 1);
  out.tail_mass = tails[ell_max + 1];
  double worst = 0.0;
  int clamped = 0;
  for (int ell = 0; ell <= ell_max; ++ell) {
    double p = tails[ell] - tails[ell + 1];
    if (p < 0.0) {
      worst = std::min(worst, p);
      if (p < -1e-6)
        throw QuadratureError(
            "pmf entry at ell = " + std::to_string(ell) + " is negative", -p);
      p = 0.0;
      ++clamped;
    }
    out.probs[ell] = p;
  }
  if (clamped > 0) {
    std::cerr << "warning: clamped " << clamped
              << " slightly negative pmf entries (min " << worst << ")\n";
    double total = out.tail_mass;
    for (double p : out.probs) total += p;
    for (double& p : out.probs) p /= total;
    out.tail_mass /= total;
  }
  return out;
}

Pmf pmf_with_reuse(const NetworkParams& np, int ell_max) {
  Pmf band = pmf_of_l(np, ell_max);
  if (np.k_reuse == 1) return band;

  // Counts are nonnegative, so entries <= ell_max of the K-fold convolution
  // only ever combine per-band entries <= ell_max; truncation stays exact.
  std::vector<double> acc = band.probs;
  for (int k = 2; k <= np.k_reuse; ++k) {
    std::vector<double> next(acc.size(), 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == 0.0) continue;
      for (std::size_t j = 0; i + j < next.size(); ++j)
        next[i + j] += acc[i] * band.probs[j];
    }
    acc = std::move(next);
  }

  Pmf out;
  out.probs = std::move(acc);
  double sum = 0.0;
  for (double p : out.probs) sum += p;
  out.tail_mass = std::max(0.0, 1.0 - sum);
  return out;
}

}  // namespace netloc
