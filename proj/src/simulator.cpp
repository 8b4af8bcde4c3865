#include "netloc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "netloc/errors.hpp"
#include "netloc/rng.hpp"

namespace netloc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Anchor {
  double d2;      // squared distance to the target
  double theta;   // angle as seen from the target
  double power;   // received power: shadow * d^(-alpha)
  int band;
  bool active;
  bool hearable = false;
  double sir = 0.0;
};

}  // namespace

void SimConfig::validate() const {
  mp.validate();
  if (n_realizations < 1)
    throw std::invalid_argument("n_realizations must be at least 1");
  if (mean_anchors < 100.0)
    throw std::invalid_argument(
        "mean_anchors must be at least 100 to keep disk truncation negligible");
}

double McEstimate::empirical_p_l_geq(int ell) const {
  if (ell <= 0) return 1.0;
  long count = 0;
  for (std::size_t i = static_cast<std::size_t>(ell); i < l_histogram.size(); ++i)
    count += l_histogram[i];
  return static_cast<double>(count) / static_cast<double>(n);
}

McEstimate run_network_mc(const SimConfig& cfg) {
  cfg.validate();
  const NetworkParams& np = cfg.mp.net;
  const double radius2 = cfg.mean_anchors / (np.lambda * std::numbers::pi);
  const double rim2 = radius2 * 0.98 * 0.98;
  const double sigma_ln = np.shadow_sigma_db * std::numbers::ln10 / 10.0;
  const double threshold = np.beta / np.gamma;
  const int n_max = cfg.mp.n_max;
  const bool alpha_is_4 = np.alpha == 4.0;

  McEstimate out;
  out.seed = cfg.seed;
  out.n = cfg.n_realizations;
  out.s_by_realization.resize(static_cast<std::size_t>(cfg.n_realizations));
  out.l_by_realization.resize(static_cast<std::size_t>(cfg.n_realizations));

  std::vector<Anchor> anchors;
  std::vector<double> band_power(static_cast<std::size_t>(np.k_reuse));
  std::vector<int> order;

  for (long r = 0; r < cfg.n_realizations; ++r) {
    std::mt19937_64 gen = make_engine(cfg.seed, static_cast<std::uint64_t>(r));
    std::poisson_distribution<int> n_anchor_dist(cfg.mean_anchors);
    std::lognormal_distribution<double> shadow_dist(0.0, sigma_ln);

    const int n_anchors = n_anchor_dist(gen);
    anchors.clear();
    anchors.reserve(static_cast<std::size_t>(n_anchors));
    for (int i = 0; i < n_anchors; ++i) {
      Anchor a;
      a.d2 = radius2 * uniform01(gen);
      a.theta = kTwoPi * uniform01(gen);
      const double shadow = shadow_dist(gen);
      a.power = alpha_is_4 ? shadow / (a.d2 * a.d2)
                           : shadow * std::pow(a.d2, -np.alpha / 2.0);
      a.band = np.k_reuse == 1
                   ? 0
                   : std::min(np.k_reuse - 1,
                              static_cast<int>(uniform01(gen) * np.k_reuse));
      a.active = np.q >= 1.0 ? true
                             : (np.q <= 0.0 ? false : uniform01(gen) < np.q);
      anchors.push_back(a);
    }

    std::fill(band_power.begin(), band_power.end(), 0.0);
    for (const Anchor& a : anchors)
      if (a.active) band_power[a.band] += a.power;

    int l_heard = 0;
    bool near_rim = false;
    for (Anchor& a : anchors) {
      const double interference =
          band_power[a.band] - (a.active ? a.power : 0.0);
      a.hearable = a.power >= threshold * interference;
      if (a.hearable) {
        a.sir = a.power / interference;  // +inf when nothing interferes
        ++l_heard;
        if (a.d2 > rim2) near_rim = true;
      }
    }
    // With q = 0 the hearable set is the whole disk by construction, so rim
    // proximity carries no truncation signal; selection still uses only the
    // nearest anchors.
    if (near_rim && np.q > 0.0) ++out.edge_flagged;

    if (static_cast<std::size_t>(l_heard) + 1 > out.l_histogram.size())
      out.l_histogram.resize(static_cast<std::size_t>(l_heard) + 1, 0);
    ++out.l_histogram[static_cast<std::size_t>(l_heard)];

    double s;
    if (l_heard < 3) {
      s = cfg.mp.m_error;
    } else {
      order.clear();
      for (int i = 0; i < n_anchors; ++i)
        if (anchors[static_cast<std::size_t>(i)].hearable) order.push_back(i);
      const int n_sel = std::min(l_heard, n_max);
      std::partial_sort(order.begin(), order.begin() + n_sel, order.end(),
                        [&anchors](int i, int j) {
                          const Anchor& a = anchors[static_cast<std::size_t>(i)];
                          const Anchor& b = anchors[static_cast<std::size_t>(j)];
                          if (a.sir != b.sir) return a.sir > b.sir;
                          if (a.d2 != b.d2) return a.d2 < b.d2;
                          return i < j;
                        });
      AnchorAngles sel;
      sel.angles.reserve(static_cast<std::size_t>(n_sel));
      for (int k = 0; k < n_sel; ++k)
        sel.angles.push_back(anchors[static_cast<std::size_t>(order[k])].theta);
      try {
        s = compute_s_from_angles(sel, cfg.mp.sigma_r).s;
      } catch (const SingularGeometryError&) {
        ++out.singular_count;
        s = std::numeric_limits<double>::infinity();
      }
    }
    out.s_by_realization[static_cast<std::size_t>(r)] = s;
    out.l_by_realization[static_cast<std::size_t>(r)] = l_heard;
  }

  if (out.edge_flagged * 200 > cfg.n_realizations)  // 0.5% incidence
    throw std::invalid_argument(
        "hearable anchors reached the disk rim in " +
        std::to_string(out.edge_flagged) +
        " realizations; increase mean_anchors");

  out.sorted_s = out.s_by_realization;
  std::sort(out.sorted_s.begin(), out.sorted_s.end());
  return out;
}

McEstimate run_conditional_mc(int l, double sigma_r, long n, std::uint64_t seed) {
  if (l < 3) throw std::domain_error("run_conditional_mc: need L >= 3");
  if (sigma_r <= 0.0)
    throw std::domain_error("run_conditional_mc: sigma_r must be positive");
  if (n < 1) throw std::invalid_argument("need at least one realization");

  McEstimate out;
  out.seed = seed;
  out.n = n;
  out.s_by_realization.resize(static_cast<std::size_t>(n));
  out.l_by_realization.assign(static_cast<std::size_t>(n), l);
  out.l_histogram.assign(static_cast<std::size_t>(l) + 1, 0);
  out.l_histogram[static_cast<std::size_t>(l)] = n;

  for (long r = 0; r < n; ++r) {
    std::mt19937_64 gen = make_engine(seed, static_cast<std::uint64_t>(r));
    const AnchorAngles angles = sample_uniform_angles(l, gen);
    const double d = compute_d_internodal(internodal_from_angles(angles));
    double s;
    if (d <= kSingularD) {
      ++out.singular_count;
      s = std::numeric_limits<double>::infinity();
    } else {
      s = s_from_d(d, l, sigma_r);
    }
    out.s_by_realization[static_cast<std::size_t>(r)] = s;
  }

  out.sorted_s = out.s_by_realization;
  std::sort(out.sorted_s.begin(), out.sorted_s.end());
  return out;
}

DwSamples run_d_mc(int l, long n, std::uint64_t seed) {
  if (l < 3) throw std::domain_error("run_d_mc: need L >= 3");
  if (n < 1) throw std::invalid_argument("need at least one realization");

  DwSamples out;
  out.l = l;
  out.d.resize(static_cast<std::size_t>(n));
  out.w_top1.resize(static_cast<std::size_t>(n));
  out.w_top2.resize(static_cast<std::size_t>(n));
  out.w_top3.resize(static_cast<std::size_t>(n));

  for (long r = 0; r < n; ++r) {
    std::mt19937_64 gen = make_engine(seed, static_cast<std::uint64_t>(r));
    const AnchorAngles angles = sample_uniform_angles(l, gen);
    const InternodalAngles gaps = internodal_from_angles(angles);
    out.d[static_cast<std::size_t>(r)] = compute_d_internodal(gaps);
    const std::size_t top = gaps.sorted.size() - 1;
    const double s1 = std::sin(gaps.sorted[top]);
    const double s2 = std::sin(gaps.sorted[top - 1]);
    const double s3 = std::sin(gaps.sorted[top - 2]);
    out.w_top1[static_cast<std::size_t>(r)] = s1 * s1;
    out.w_top2[static_cast<std::size_t>(r)] = s2 * s2;
    out.w_top3[static_cast<std::size_t>(r)] = s3 * s3;
  }
  return out;
}

std::vector<double> empirical_cdf(const McEstimate& est,
                                  const std::vector<double>& grid) {
  if (est.sorted_s.empty()) throw std::invalid_argument("empty estimate");
  std::vector<double> out;
  out.reserve(grid.size());
  for (double x : grid) {
    const auto it =
        std::upper_bound(est.sorted_s.begin(), est.sorted_s.end(), x);
    out.push_back(static_cast<double>(it - est.sorted_s.begin()) /
                  static_cast<double>(est.sorted_s.size()));
  }
  return out;
}

}  // namespace netloc
