#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "olps/market.hpp"
#include "olps/updates.hpp"

namespace olps {

/// Best constant-rebalanced portfolio in hindsight.
struct OfflineSolution {
  Portfolio w_star;
  double ls_star = 0.0;
  std::size_t iterations = 0;
  /// max_i dF/dw_i - w . grad F at w_star. By concavity this bounds the
  /// remaining suboptimality: F(w_opt) - ls_star <= gradient_residual.
  double gradient_residual = 0.0;
};

/// F(w) = (1/T) sum_t ln(w . rho^(t)).
double log_wealth_rate(const PriceRelativeSeries& rel, std::span<const double> w);

/// Maximizes F over the simplex by exponentiated-gradient ascent with an
/// adaptive step (doubled after each accepted step, halved on rejection).
/// Stops once the gradient residual is <= tol or after max_iter steps.
OfflineSolution solve_offline(const PriceRelativeSeries& rel, double tol = 1e-8,
                              std::size_t max_iter = 100000,
                              std::optional<Portfolio> start = std::nullopt);

/// ln(1 / r_min): the regret of any portfolio is at most this.
double naive_regret_bound(double r_min);

}  // namespace olps
