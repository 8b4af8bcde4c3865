#include "netloc/infoanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "netloc/simulator.hpp"

namespace netloc {

namespace {

int bin_count(double bin_width) {
  if (!(bin_width > 0.0 && bin_width <= 0.5))
    throw std::invalid_argument("bin_width must lie in (0, 0.5]");
  return static_cast<int>(std::llround(1.0 / bin_width));
}

int bin_index(double x, double support, int n_bins) {
  // rounding at the top of the support folds into the last bin
  if (!(x >= 0.0 && x <= support * (1.0 + 1e-9)))
    throw std::invalid_argument("sample outside the declared support");
  const int k = static_cast<int>(x / support * n_bins);
  return std::min(k, n_bins - 1);
}

}  // namespace

double entropy_d(std::span<const double> d, int l, double bin_width) {
  if (l < 2) throw std::domain_error("entropy_d: need L >= 2");
  if (d.empty()) throw std::invalid_argument("entropy_d: no samples");
  const int n_bins = bin_count(bin_width);
  const double dmax = static_cast<double>(l) * l / 4.0;
  const double delta = dmax / n_bins;

  std::vector<long> counts(static_cast<std::size_t>(n_bins), 0);
  for (double x : d) ++counts[static_cast<std::size_t>(bin_index(x, dmax, n_bins))];

  const double n = static_cast<double>(d.size());
  double h = 0.0;
  for (long c : counts) {
    if (c == 0) continue;  // 0 log 0 = 0
    const double p = static_cast<double>(c) / n;
    h += p * std::log2(delta / p);
  }
  return h;
}

double conditional_entropy_d_given_w(std::span<const double> d,
                                     std::span<const double> w, int l,
                                     double bin_width) {
  if (l < 2) throw std::domain_error("conditional_entropy_d_given_w: need L >= 2");
  if (d.size() != w.size() || d.empty())
    throw std::invalid_argument("joint samples must be nonempty and aligned");
  const int n_bins = bin_count(bin_width);
  const double dmax = static_cast<double>(l) * l / 4.0;
  const double delta = dmax / n_bins;

  std::vector<long> joint(static_cast<std::size_t>(n_bins) * n_bins, 0);
  std::vector<long> w_marginal(static_cast<std::size_t>(n_bins), 0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const int kd = bin_index(d[i], dmax, n_bins);
    const int kw = bin_index(w[i], 1.0, n_bins);
    ++joint[static_cast<std::size_t>(kw) * n_bins + kd];
    ++w_marginal[static_cast<std::size_t>(kw)];
  }

  const double n = static_cast<double>(d.size());
  double h = 0.0;
  for (int j = 0; j < n_bins; ++j) {
    if (w_marginal[static_cast<std::size_t>(j)] == 0) continue;
    const double pj = static_cast<double>(w_marginal[static_cast<std::size_t>(j)]) / n;
    for (int k = 0; k < n_bins; ++k) {
      const long c = joint[static_cast<std::size_t>(j) * n_bins + k];
      if (c == 0) continue;
      const double pjk = static_cast<double>(c) / n;
      h += pjk * std::log2(pj * delta / pjk);
    }
  }
  return h;
}

double mutual_information(std::span<const double> d, std::span<const double> w,
                          int l, double bin_width) {
  const double mi =
      entropy_d(d, l, bin_width) - conditional_entropy_d_given_w(d, w, l, bin_width);
  if (mi < -0.01)
    throw std::logic_error("mutual information estimate below -0.01 bits");
  if (mi < 0.0) {
    std::cerr << "warning: clamping mutual information estimate " << mi
              << " to 0\n";
    return 0.0;
  }
  return mi;
}

std::vector<MiRow> run_mi_study(const std::vector<int>& ls, long n,
                                std::uint64_t seed, double bin_width) {
  std::vector<int> order(ls);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::vector<MiRow> rows;
  rows.reserve(order.size() * 3);
  for (int l : order) {
    const DwSamples s = run_d_mc(l, n, seed);
    const std::span<const double> d(s.d);
    rows.push_back({l, "top1", mutual_information(d, s.w_top1, l, bin_width),
                    n, bin_width});
    rows.push_back({l, "top2", mutual_information(d, s.w_top2, l, bin_width),
                    n, bin_width});
    rows.push_back({l, "top3", mutual_information(d, s.w_top3, l, bin_width),
                    n, bin_width});
  }
  return rows;
}

}  // namespace netloc
