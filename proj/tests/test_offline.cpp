#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "olps/error.hpp"
#include "olps/market.hpp"
#include "olps/offline.hpp"
#include "olps/random.hpp"

namespace {

using olps::PriceRelativeSeries;

PriceRelativeSeries alternating(std::size_t horizon, double r) {
  return olps::generate_market({olps::MarketKind::TwoAssetAlternating, 2, horizon, r, 0});
}

// Exhaustive search over the simplex grid {k / steps} for three assets.
double grid_best(const PriceRelativeSeries& rel, int steps) {
  double best = -1e300;
  for (int a = 0; a <= steps; ++a) {
    for (int b = 0; a + b <= steps; ++b) {
      const std::vector<double> w{a / double(steps), b / double(steps),
                                  (steps - a - b) / double(steps)};
      best = std::max(best, olps::log_wealth_rate(rel, w));
    }
  }
  return best;
}

TEST(Offline, DominantAssetIsAVertex) {
  const PriceRelativeSeries rel(3, {1.0, 0.5, 0.7, 1.0, 0.9, 0.6, 1.0, 0.8, 0.8}, 0.5);
  const auto sol = olps::solve_offline(rel);
  EXPECT_NEAR(sol.w_star[0], 1.0, 1e-6);
  EXPECT_NEAR(sol.ls_star, 0.0, 1e-8);
  EXPECT_LE(sol.ls_star, 0.0);
}

TEST(Offline, AlternatingPairIsHalfHalf) {
  for (double r : {0.1, 0.5, 0.9}) {
    const auto sol = olps::solve_offline(alternating(1000, r));
    EXPECT_NEAR(sol.w_star[0], 0.5, 1e-6);
    EXPECT_NEAR(sol.ls_star, std::log((1.0 + r) / 2.0), 1e-10);
  }
}

TEST(Offline, MatchesGridSearchOnRandomInstances) {
  olps::RandomStream rng(21);
  for (int instance = 0; instance < 10; ++instance) {
    std::vector<double> data(12);
    for (std::size_t t = 0; t < 4; ++t) {
      double top = 0.0;
      for (std::size_t i = 0; i < 3; ++i) top = std::max(top, data[3 * t + i] = rng.uniform(0.3, 1.0));
      for (std::size_t i = 0; i < 3; ++i) data[3 * t + i] /= top;
    }
    double floor = *std::min_element(data.begin(), data.end());
    const PriceRelativeSeries rel(3, data, floor);
    const auto sol = olps::solve_offline(rel);
    const double grid = grid_best(rel, 1000);
    EXPECT_GE(sol.ls_star + sol.gradient_residual + 1e-14, grid);
    EXPECT_NEAR(sol.ls_star, grid, 1e-5);
  }
}

TEST(Offline, SolutionIsAtLeastAsGoodAsUniformAndVertices) {
  const auto rel = olps::generate_market({olps::MarketKind::IidUniform, 6, 200, 0.4, 5});
  const auto sol = olps::solve_offline(rel);
  EXPECT_GE(sol.ls_star, olps::log_wealth_rate(rel, std::vector<double>(6, 1.0 / 6.0)));
  for (std::size_t i = 0; i < 6; ++i) {
    std::vector<double> e(6, 0.0);
    e[i] = 1.0;
    EXPECT_GE(sol.ls_star, olps::log_wealth_rate(rel, e));
  }
  EXPECT_LE(sol.gradient_residual, 1e-8);
  EXPECT_NEAR(std::accumulate(sol.w_star.weights().begin(), sol.w_star.weights().end(), 0.0), 1.0,
              1e-12);
}

TEST(Offline, IndependentOfStartingPoint) {
  const auto rel = olps::generate_market({olps::MarketKind::IidUniform, 5, 300, 0.3, 9});
  const auto a = olps::solve_offline(rel, 1e-9);
  const auto b = olps::solve_offline(rel, 1e-9, 100000,
                                     olps::Portfolio({0.6, 0.1, 0.1, 0.1, 0.1}));
  EXPECT_NEAR(a.ls_star, b.ls_star, 1e-8);
}

TEST(Offline, InvariantUnderAssetPermutation) {
  const auto rel = olps::generate_market({olps::MarketKind::IidUniform, 4, 150, 0.5, 13});
  const std::vector<std::size_t> perm{2, 0, 3, 1};
  const auto a = olps::solve_offline(rel);
  const auto b = olps::solve_offline(rel.permuted(perm));
  EXPECT_NEAR(a.ls_star, b.ls_star, 1e-10);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(b.w_star[j], a.w_star[perm[j]], 1e-4);
}

TEST(Offline, NaiveBound) {
  EXPECT_EQ(olps::naive_regret_bound(1.0), 0.0);
  EXPECT_NEAR(olps::naive_regret_bound(0.5), 0.693147, 1e-6);
  EXPECT_NEAR(olps::naive_regret_bound(std::exp(-1.0)), 1.0, 1e-15);
  EXPECT_THROW(olps::naive_regret_bound(0.0), olps::Error);
}

}  // namespace
