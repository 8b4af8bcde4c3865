#pragma once

#include <cmath>

namespace netloc {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Physical and network parameters shared by the analytic model and the
// Monte Carlo simulator. gamma and beta are stored linear (not dB).
struct NetworkParams {
  double alpha = 4.0;              // path loss exponent, > 2
  double lambda = 4.618802153e-6;  // anchor density per m^2 (hex, 500 m ISD)
  double shadow_sigma_db = 8.0;    // lognormal shadowing std dev
  double q = 1.0;                  // network load in [0, 1]
  double gamma = 100.0;            // processing gain, linear
  double beta = 10.0;              // post-processing SIR threshold, linear
  int k_reuse = 1;                 // frequency reuse factor, >= 1

  void validate() const;
};

// Parameters of the marginal distribution layer on top of NetworkParams.
struct MarginalParams {
  NetworkParams net;
  double sigma_r = 20.0;  // ranging error std dev, meters
  double m_error = 200.0; // substituted error when unlocalizable, meters
  int n_max = 10;         // max anchors tasked per localization, >= 3

  void validate() const;
};

// lambda_tilde: anchor density transformed so that lognormal per-link
// shadowing can be absorbed into an equivalent unshadowed process.
double shadow_transform(double lambda, double alpha, double shadow_sigma_db);

}  // namespace netloc
