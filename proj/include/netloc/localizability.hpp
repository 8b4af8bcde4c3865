#pragma once

#include <vector>

#include "netloc/params.hpp"

namespace netloc {

// Distribution of the hearable-anchor count L, truncated at ell_max with the
// remaining mass kept explicit.
struct Pmf {
  std::vector<double> probs;  // indexed by ell = 0..ell_max
  double tail_mass = 0.0;     // P[L >= ell_max + 1]

  int ell_max() const { return static_cast<int>(probs.size()) - 1; }
  double p_leq(int ell) const;
  double p_geq(int ell) const;
};

// P[L >= ell] for a single frequency band. Interference-limited, so the
// result does not depend on the anchor density; k_reuse is ignored here
// (reuse enters through composition over bands).
double p_l_geq(int ell, const NetworkParams& np);

// pmf by telescoping the tail probabilities; single band.
Pmf pmf_of_l(const NetworkParams& np, int ell_max);

// pmf of the total count over k_reuse independent bands (iterated discrete
// convolution of the per-band pmf). k_reuse == 1 reproduces pmf_of_l exactly.
Pmf pmf_with_reuse(const NetworkParams& np, int ell_max);

}  // namespace netloc
