#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace netloc {

// Plug-in differential entropy of D from a histogram over [0, dmax] with
// dmax = l^2/4. bin_width is the fraction of the support per bin (0.01
// default, i.e. 100 bins).
double entropy_d(std::span<const double> d, int l, double bin_width = 0.01);

// Plug-in conditional differential entropy h(D | W) from the 2-D histogram
// over [0, l^2/4] x [0, 1].
double conditional_entropy_d_given_w(std::span<const double> d,
                                     std::span<const double> w, int l,
                                     double bin_width = 0.01);

// I(D; W) = h(D) - h(D|W); tiny negative estimates are clamped to zero.
double mutual_information(std::span<const double> d, std::span<const double> w,
                          int l, double bin_width = 0.01);

struct MiRow {
  int l;
  std::string which;  // "top1", "top2", "top3" (largest, 2nd, 3rd gap)
  double mi_bits;
  long n_samples;
  double bin_width;
};

// The full approximation-selection study for each requested L.
std::vector<MiRow> run_mi_study(const std::vector<int>& ls, long n,
                                std::uint64_t seed, double bin_width = 0.01);

}  // namespace netloc
