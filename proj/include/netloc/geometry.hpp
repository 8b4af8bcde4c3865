#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace netloc {

// Angles of participating anchors as seen from the target, radians in [0, 2pi).
struct AnchorAngles {
  std::vector<double> angles;

  int count() const { return static_cast<int>(angles.size()); }
};

// Angular gaps between consecutive anchors around the circle. `gaps` follows
// the circular order (the last entry closes the wrap); `sorted` is the same
// multiset ascending, so sorted[k-1] is the k-th smallest gap.
struct InternodalAngles {
  std::vector<double> gaps;
  std::vector<double> sorted;

  int count() const { return static_cast<int>(gaps.size()); }
};

// One evaluation of the position-error benchmark.
struct BenchmarkValue {
  double s;        // meters
  double d;        // dimensionless denominator quantity
  double sigma_r;  // meters
};

double normalize_angle(double theta);

AnchorAngles sample_uniform_angles(int l, std::mt19937_64& gen);

InternodalAngles internodal_from_angles(const AnchorAngles& a);

// Benchmark straight from the Fisher information of the angle set:
// s = sigma_r * sqrt(L) / sqrt(sum cos^2 * sum sin^2 - (sum sin cos)^2).
// Requires L >= 3; throws SingularGeometryError when the denominator
// falls below kSingularD.
BenchmarkValue compute_s_from_angles(const AnchorAngles& a, double sigma_r);

// D as the double sum of sin^2 over all runs of consecutive gaps.
double compute_d_internodal(const InternodalAngles& g);

// D re-summed diagonally: per-gap sin^2 terms plus runs of length 2..L-2.
double compute_d_proposition1(const InternodalAngles& g);

// s = sigma_r * sqrt(L / d), same singularity policy as compute_s_from_angles.
double s_from_d(double d, int l, double sigma_r);

double d_max(int l);

inline constexpr double kSingularD = 1e-12;

}  // namespace netloc
