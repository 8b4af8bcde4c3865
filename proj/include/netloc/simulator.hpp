#pragma once

#include <cstdint>
#include <vector>

#include "netloc/geometry.hpp"
#include "netloc/params.hpp"

namespace netloc {

struct SimConfig {
  MarginalParams mp;
  std::uint64_t seed = 1;
  int n_realizations = 100000;
  double mean_anchors = 1000.0;

  void validate() const;
};

// Empirical joint outcome of a network simulation: one (L, S) sample per
// realization, plus bookkeeping for degenerate draws.
struct McEstimate {
  std::vector<double> sorted_s;        // ascending; unlocalizable draws hold m_error
  std::vector<double> s_by_realization;  // realization order, for sample dumps
  std::vector<int> l_by_realization;
  std::vector<long> l_histogram;       // counts by hearable-anchor count
  std::uint64_t seed = 0;
  long n = 0;
  long singular_count = 0;             // FIM-singular draws (s recorded as +inf)
  long edge_flagged = 0;               // realizations with a hearable anchor near the disk rim

  double empirical_p_l_geq(int ell) const;
};

// Full network oracle: PPP anchors in a disk, per-link lognormal shadowing,
// per-band interference with load q, SIR thresholding, top-N selection,
// exact S from the selected angles (m_error when fewer than 3 heard).
McEstimate run_network_mc(const SimConfig& cfg);

// Conditional oracle: L iid uniform angles per draw, exact S through the
// internodal-gap path.
McEstimate run_conditional_mc(int l, double sigma_r, long n, std::uint64_t seed);

// Joint samples of D and the sin^2 of the three largest gap order statistics,
// for the mutual-information study.
struct DwSamples {
  int l = 0;
  std::vector<double> d;
  std::vector<double> w_top1;  // sin^2 of largest gap
  std::vector<double> w_top2;  // sin^2 of second largest
  std::vector<double> w_top3;  // sin^2 of third largest
};

DwSamples run_d_mc(int l, long n, std::uint64_t seed);

// Right-continuous empirical CDF of est.sorted_s on the given grid.
std::vector<double> empirical_cdf(const McEstimate& est,
                                  const std::vector<double>& grid);

}  // namespace netloc
