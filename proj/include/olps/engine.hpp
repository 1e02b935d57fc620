#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olps/estimators.hpp"
#include "olps/market.hpp"
#include "olps/offline.hpp"

namespace olps {

enum class Algorithm {
  Eg,               // full exponentiated-gradient rebalancing
  Sampled,          // invest in s sampled assets, exact update
  Approx,           // sampled investment, estimated inner product
  QuantumEmulated,  // log-domain weights, emulated quantum subroutines
};

std::string_view to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view name);

struct RunConfig {
  Algorithm algorithm = Algorithm::Eg;
  double delta = 0.05;
  double cost_per_trade = 0.0;
  std::optional<double> eta_override;
  std::optional<std::uint64_t> s_override;
  /// Overrides for the estimator error levels; zero selects the exact value.
  std::optional<double> eps_i_override;
  std::optional<double> eps_z_override;
  NoiseModel noise;
  std::uint64_t seed = 0;
  /// Accuracy parameter of the multi-sampling parameter search.
  double multisample_eps = 0.5;
  double offline_tol = 1e-8;
  std::size_t offline_max_iter = 100000;
  /// Keep each step's full portfolio vector in the report.
  bool record_portfolios = false;
};

struct StepRecord {
  std::size_t t = 0;  // 1-based
  std::vector<double> portfolio;
  std::vector<std::size_t> samples;
  /// w . rho, or the mean of rho over the sampled assets.
  double realized = 0.0;
  /// w . rho for the distribution actually invested from.
  double expected = 0.0;
  std::optional<double> i_tilde;
  std::optional<double> z_tilde;
  double cost = 0.0;
  std::uint64_t queries = 0;
  bool estimator_ok = true;
  bool hoeffding_ok = true;
};

struct SuccessCounter {
  std::size_t ok = 0;
  std::size_t trials = 0;
  void record(bool success) {
    ok += success ? 1 : 0;
    ++trials;
  }
  bool all() const noexcept { return ok == trials; }
};

struct RunParams {
  std::size_t n = 0;
  std::size_t horizon = 0;
  double r_min = 0.0;
  double delta = 0.0;
  double cost_per_trade = 0.0;
  double eta = 0.0;
  double eps_i = 0.0;
  double eps_z = 0.0;
  std::uint64_t s = 0;
  std::uint64_t seed = 0;
  NoiseModel noise;
};

struct RunReport {
  Algorithm algorithm = Algorithm::Eg;
  RunParams params;
  double ls_achieved = 0.0;
  double ls_star = 0.0;
  double offline_residual = 0.0;
  double regret = 0.0;
  double regret_bound = 0.0;
  bool bound_satisfied = false;
  double total_cost = 0.0;
  std::uint64_t total_queries = 0;
  std::uint64_t unitary_calls = 0;
  std::map<std::string, std::uint64_t> subroutine_calls;
  std::uint64_t multisample_fallback_steps = 0;
  /// Per-step probabilistic events: sample mean within sqrt(1/(2T)) of its
  /// expectation, and inner-product estimate within its relative band.
  SuccessCounter hoeffding;
  SuccessCounter estimator;
  std::vector<StepRecord> steps;
};

/// Regret-bound constant times (1/r_min) sqrt(ln n / (2T)); the constants
/// are 1, 2, 8 and 12 in the order of the Algorithm enumerators.
double regret_bound(Algorithm algorithm, std::size_t n, std::size_t horizon, double r_min);

RunReport run_alg1(const PriceRelativeSeries& rel, const RunConfig& cfg);
RunReport run_alg2(const PriceRelativeSeries& rel, const RunConfig& cfg);
RunReport run_alg3(const PriceRelativeSeries& rel, const RunConfig& cfg);
RunReport run_alg4(const PriceRelativeSeries& rel, const RunConfig& cfg);

/// Dispatches on cfg.algorithm. When `offline` is given it is used as the
/// benchmark instead of solving again.
RunReport run(const PriceRelativeSeries& rel, const RunConfig& cfg,
              const std::optional<OfflineSolution>& offline = std::nullopt);

/// (1/T) sum_t ln(realized_t), summed in step order.
double ls_from_steps(const RunReport& report);

/// exp(T * ls_achieved).
double wealth_factor(const RunReport& report);

/// Runs seeds cfg.seed, cfg.seed + 1, ... in order; `market(seed)` supplies
/// each replication's price relatives.
std::vector<RunReport> replicate(const std::function<PriceRelativeSeries(std::uint64_t)>& market,
                                 const RunConfig& cfg, std::size_t replications);

}  // namespace olps
