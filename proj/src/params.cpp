#include "netloc/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace netloc {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void NetworkParams::validate() const {
  require(alpha > 2.0, "alpha must exceed 2");
  require(lambda > 0.0, "lambda must be positive");
  require(shadow_sigma_db >= 0.0, "shadow_sigma_db must be nonnegative");
  require(q >= 0.0 && q <= 1.0, "q must lie in [0, 1]");
  require(gamma > 0.0, "gamma must be positive");
  require(beta > 0.0, "beta must be positive");
  require(k_reuse >= 1, "k_reuse must be at least 1");
}

void MarginalParams::validate() const {
  net.validate();
  require(sigma_r > 0.0, "sigma_r must be positive");
  require(m_error > 0.0, "m_error must be positive");
  require(n_max >= 3, "n_max must be at least 3");
}

double shadow_transform(double lambda, double alpha, double shadow_sigma_db) {
  require(lambda > 0.0, "lambda must be positive");
  require(alpha > 2.0, "alpha must exceed 2");
  require(shadow_sigma_db >= 0.0, "shadow_sigma_db must be nonnegative");
  const double sigma_ln = shadow_sigma_db * std::log(10.0) / 10.0;
  const double m = 2.0 / alpha * sigma_ln;
  return lambda * std::exp(0.5 * m * m);
}

}  // namespace netloc
