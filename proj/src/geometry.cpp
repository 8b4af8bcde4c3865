#include "netloc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "netloc/errors.hpp"
#include "netloc/rng.hpp"
#include "netloc/stats.hpp"

namespace netloc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sum_maybe_pairwise(std::vector<double>& terms) {
  if (terms.size() > 32) return pairwise_sum(terms);
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

}  // namespace

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod of a negative multiple of 2*pi can round up to exactly 2*pi
  if (t >= kTwoPi) t = 0.0;
  return t;
}

AnchorAngles sample_uniform_angles(int l, std::mt19937_64& gen) {
  if (l < 1) throw std::domain_error("sample_uniform_angles: need L >= 1");
  AnchorAngles out;
  out.angles.resize(static_cast<std::size_t>(l));
  for (double& a : out.angles) a = kTwoPi * uniform01(gen);
  return out;
}

InternodalAngles internodal_from_angles(const AnchorAngles& a) {
  const int l = a.count();
  if (l < 1) throw std::domain_error("internodal_from_angles: empty anchor set");
  std::vector<double> s(a.angles);
  for (double& v : s) v = normalize_angle(v);
  std::stable_sort(s.begin(), s.end());

  InternodalAngles out;
  out.gaps.resize(s.size());
  for (int i = 0; i + 1 < l; ++i) out.gaps[i] = s[i + 1] - s[i];
  out.gaps[l - 1] = kTwoPi - (s[l - 1] - s[0]);
  out.sorted = out.gaps;
  std::sort(out.sorted.begin(), out.sorted.end());
  return out;
}

BenchmarkValue compute_s_from_angles(const AnchorAngles& a, double sigma_r) {
  const int l = a.count();
  if (l < 3) throw std::domain_error("compute_s_from_angles: need L >= 3");
  if (sigma_r <= 0.0) throw std::domain_error("sigma_r must be positive");

  std::vector<double> cc, ss, cs;
  cc.reserve(a.angles.size());
  ss.reserve(a.angles.size());
  cs.reserve(a.angles.size());
  for (double th : a.angles) {
    const double c = std::cos(th);
    const double s = std::sin(th);
    cc.push_back(c * c);
    ss.push_back(s * s);
    cs.push_back(c * s);
  }
  const double sum_cc = sum_maybe_pairwise(cc);
  const double sum_ss = sum_maybe_pairwise(ss);
  const double sum_cs = sum_maybe_pairwise(cs);
  const double d = sum_cc * sum_ss - sum_cs * sum_cs;
  if (d <= kSingularD)
    throw SingularGeometryError("anchor geometry is singular (collinear set)");
  return {sigma_r * std::sqrt(static_cast<double>(l) / d), d, sigma_r};
}

double compute_d_internodal(const InternodalAngles& g) {
  const int l = g.count();
  if (l < 2) throw std::domain_error("compute_d_internodal: need L >= 2");
  // prefix[i] = angle of anchor i relative to anchor 0
  std::vector<double> prefix(static_cast<std::size_t>(l), 0.0);
  for (int i = 1; i < l; ++i) prefix[i] = prefix[i - 1] + g.gaps[i - 1];

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(l) * (l - 1) / 2);
  for (int i = 0; i < l - 1; ++i)
    for (int j = i + 1; j < l; ++j) {
      const double s = std::sin(prefix[j] - prefix[i]);
      terms.push_back(s * s);
    }
  return sum_maybe_pairwise(terms);
}

double compute_d_proposition1(const InternodalAngles& g) {
  const int l = g.count();
  if (l < 2) throw std::domain_error("compute_d_proposition1: need L >= 2");
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(l) * (l - 1) / 2);
  for (double gap : g.sorted) {
    const double s = std::sin(gap);
    terms.push_back(s * s);
  }
  // runs of 2..L-2 consecutive gaps; runs never include the wrap gap
  for (int run = 2; run <= l - 2; ++run)
    for (int j = 0; j + run < l; ++j) {
      double acc = 0.0;
      for (int k = j; k < j + run; ++k) acc += g.gaps[k];
      const double s = std::sin(acc);
      terms.push_back(s * s);
    }
  return sum_maybe_pairwise(terms);
}

double s_from_d(double d, int l, double sigma_r) {
  if (l < 3) throw std::domain_error("s_from_d: need L >= 3");
  if (sigma_r <= 0.0)
    throw std::domain_error("s_from_d: sigma_r must be positive");
  if (d <= kSingularD)
    throw SingularGeometryError("denominator quantity is singular");
  return sigma_r * std::sqrt(static_cast<double>(l) / d);
}

double d_max(int l) {
  if (l < 2) throw std::domain_error("d_max: need L >= 2");
  return static_cast<double>(l) * l / 4.0;
}

}  // namespace netloc
