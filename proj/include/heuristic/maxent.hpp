#pragma once

// Maximum-entropy completion of partially known covariances.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace heuristic {

// Cov(X, Z) maximizing entropy given the (X, Y) and (Y, Z) blocks.
inline double maxent_impute_pair(double var_x, double var_y, double var_z, double cov_xy,
                                 double cov_yz) {
  if (!(var_y > 0.0)) throw std::domain_error("Var(Y) must be positive");
  if (var_x < 0.0 || var_z < 0.0) throw std::domain_error("variances must be nonnegative");
  if (cov_xy * cov_xy > var_x * var_y || cov_yz * cov_yz > var_y * var_z)
    throw std::domain_error("known covariance block is not positive semi-definite");
  return cov_xy * cov_yz / var_y;
}

namespace detail {

inline void check_chain(std::span<const double> var, std::span<const double> cov,
                        std::span<const double> alpha) {
  if (var.empty()) throw std::invalid_argument("chain must have at least one node");
  if (cov.size() + 1 != var.size() || alpha.size() != var.size())
    throw std::invalid_argument("chain needs n variances, n-1 adjacent covariances, n coefficients");
  for (std::size_t i = 0; i < var.size(); ++i)
    if (!(var[i] > 0.0))
      throw std::domain_error("variance of chain node " + std::to_string(i + 1) + " must be positive");
  for (std::size_t i = 0; i < cov.size(); ++i)
    if (cov[i] * cov[i] > var[i] * var[i + 1])
      throw std::domain_error("adjacent block " + std::to_string(i + 1) +
                              " is not positive semi-definite");
}

}  // namespace detail

// Var(sum alpha_i y_i) when only variances and adjacent covariances of a chain
// are known and the rest is filled in by maximum entropy:
// Cov(y_j, y_k) = prod_{i=j}^{k-1} c_i / prod_{i=j+1}^{k-1} v_i. Linear time.
inline double chain_variance(std::span<const double> var, std::span<const double> cov,
                             std::span<const double> alpha) {
  detail::check_chain(var, cov, alpha);
  double diag = 0.0, cross = 0.0;
  double g = 0.0;  // sum_{j<k} alpha_j Cov(y_j, y_k) for the current k
  for (std::size_t k = 0; k < var.size(); ++k) {
    diag += alpha[k] * alpha[k] * var[k];
    cross += alpha[k] * g;
    if (k + 1 < var.size()) g = (g + alpha[k] * var[k]) * cov[k] / var[k];
  }
  return diag + 2.0 * cross;
}

// Same quadratic form with every unknown covariance read as 0.
inline double chain_variance_zero_fill(std::span<const double> var, std::span<const double> cov,
                                       std::span<const double> alpha) {
  detail::check_chain(var, cov, alpha);
  double v = 0.0;
  for (std::size_t k = 0; k < var.size(); ++k) v += alpha[k] * alpha[k] * var[k];
  for (std::size_t k = 0; k + 1 < var.size(); ++k) v += 2.0 * alpha[k] * alpha[k + 1] * cov[k];
  return v;
}

}  // namespace heuristic
