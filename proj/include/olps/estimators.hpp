#pragma once

// Inner-product and norm estimators.
//
// The classical estimator samples from an alias table and combines the
// draws by median-of-means. The quantum subroutines are emulated at the
// level of their guarantees: the exact value is computed classically, a
// bounded relative error is injected according to a NoiseModel, and the
// number of calls each subroutine would make is charged to a
// QuantumCostModel. Charge formulas use unit constants except where an
// explicit constant is known (27/eps^2 samples for median-of-means,
// C = 6 pi sqrt(n) / (eps sqrt(u_min)) amplitude-estimation rounds).

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "olps/random.hpp"
#include "olps/sampler.hpp"
#include "olps/updates.hpp"

namespace olps {

struct EstimatorBudget {
  double eps = 0.0;
  double delta = 0.0;
  std::uint64_t samples_used = 0;
  std::uint64_t queries_charged = 0;

  void add(std::uint64_t samples) {
    samples_used += samples;
    queries_charged += samples;
  }
};

struct Estimate {
  double value = 0.0;
  EstimatorBudget budget;
};

struct RelativeEstimate {
  double value = 0.0;
  double first_stage = 0.0;
  std::uint64_t first_stage_samples = 0;
  std::uint64_t second_stage_samples = 0;
  EstimatorBudget budget;
};

/// Hoeffding sample size ceil(2 T (1 - r_min)^2 ln(T / delta)), at least 1.
std::uint64_t sample_count(std::size_t horizon, double r_min, double delta);

/// ceil(27 / eps^2 * ln(1 / delta)) samples ...
std::uint64_t mom_sample_count(double eps, double delta);
/// ... split into max(1, ceil(ln(1 / delta))) groups.
std::uint64_t mom_group_count(double delta);

/// Median-of-means estimate of p . x from draws of the alias table: within
/// eps * sqrt(p . x) of the truth with probability >= 1 - delta / 2.
Estimate mom_inner_product(std::span<const double> x, const AliasTable& p, double eps,
                           double delta, RandomStream& rng);

/// Two-stage relative-error estimate of p . x: a first pass at eps_i gives
/// a1, the second pass at eps_i sqrt(a1) / 2 is returned. Requires
/// eps_i <= x_min (defaults to min x); throws EpsExceedsXMin otherwise.
RelativeEstimate relative_inner_product(std::span<const double> x, const AliasTable& p,
                                        double eps_i, double delta, RandomStream& rng,
                                        std::optional<double> x_min = std::nullopt);

enum class NoiseKind { Exact, WorstCaseSign, UniformRandom };

/// How an emulated subroutine realizes its "eps-accurate" guarantee.
struct NoiseModel {
  NoiseKind kind = NoiseKind::Exact;
  int sign = +1;  // WorstCaseSign only

  static NoiseModel exact() { return {}; }
  static NoiseModel worst_case(int sign) { return {NoiseKind::WorstCaseSign, sign >= 0 ? 1 : -1}; }
  static NoiseModel uniform_random() { return {NoiseKind::UniformRandom, 1}; }

  /// truth * (1 + e) with e = 0, sign * eps, or uniform on [-eps, eps).
  /// Throws InvalidArgument unless 0 <= eps < 1/2.
  double apply(double truth, double eps, RandomStream& rng) const;
};

std::string_view to_string(const NoiseModel& noise);
NoiseModel noise_from_string(std::string_view name);

enum class Subroutine : std::size_t {
  MaxFinding,
  NormEstimation,
  StatePreparation,
  MultiSampleParameters,
  MultiSampleDraws,
  MultiSampleFallback,
  InnerProduct,
  PriceQuery,
  kCount,
};

std::string_view to_string(Subroutine s);

/// Tallies emulated subroutine calls for one run.
///
/// A call made during step t is a call to a unitary built from the t - 1
/// earlier price oracles plus the current one, so it is billed t oracle
/// queries; oracle_queries() is the run total.
class QuantumCostModel {
 public:
  QuantumCostModel(std::size_t n, std::size_t horizon, double r_min, double delta);

  std::size_t assets() const noexcept { return n_; }
  std::size_t horizon() const noexcept { return horizon_; }
  double r_min() const noexcept { return r_min_; }
  double delta() const noexcept { return delta_; }

  /// ln(4 T / delta): the per-call repetition factor for success 1 - delta/(4T).
  double log_factor() const noexcept;

  /// Current step, 1-based.
  void set_step(std::size_t t) noexcept { step_ = t; }
  std::size_t step() const noexcept { return step_; }

  void charge(Subroutine s, std::uint64_t calls);

  std::uint64_t calls(Subroutine s) const { return calls_[static_cast<std::size_t>(s)]; }
  std::uint64_t unitary_calls() const noexcept { return unitary_calls_; }
  std::uint64_t oracle_queries() const noexcept { return oracle_queries_; }
  std::uint64_t fallback_steps() const noexcept { return fallback_steps_; }

 private:
  std::size_t n_;
  std::size_t horizon_;
  double r_min_;
  double delta_;
  std::size_t step_ = 1;
  std::array<std::uint64_t, static_cast<std::size_t>(Subroutine::kCount)> calls_{};
  std::uint64_t unitary_calls_ = 0;
  std::uint64_t oracle_queries_ = 0;
  std::uint64_t fallback_steps_ = 0;
};

// Per-invocation call counts; `log_factor` is ln(4T/delta).
namespace charges {
std::uint64_t max_finding(std::size_t n, double log_factor);
std::uint64_t norm_estimation(std::size_t n, double eps_z, double log_factor);
std::uint64_t state_preparation(std::size_t n, double log_factor);
/// Rounds of amplitude estimation per repetition, ceil(6 pi sqrt(n) / (eps sqrt(r_min))).
std::uint64_t inner_product_rounds(std::size_t n, double eps_i, double r_min);
std::uint64_t inner_product(std::size_t n, double eps_i, double r_min, double log_factor);
std::uint64_t multisample_parameters(std::size_t s, std::size_t n, double eps, double log_factor);
std::uint64_t multisample_draws(std::size_t s, std::size_t n, double log_factor);
/// s >= n: s independent single-sample preparations at sqrt(n) each.
std::uint64_t multisample_fallback(std::size_t s, std::size_t n);
}  // namespace charges

/// Index and value of the largest entry, ties to the smallest index.
std::pair<std::size_t, double> q_max_find(std::span<const double> values, QuantumCostModel& cost);

/// ||v||_1 with relative error eps_z injected by `noise`.
double q_norm_estimate(std::span<const double> v, double eps_z, const NoiseModel& noise,
                       QuantumCostModel& cost, RandomStream& rng);

struct PreparedState {
  /// v_i / Z~ with v = exp(l - max l); sums to ||v||_1 / Z~.
  std::vector<double> weights;
  /// Sampler over the renormalized weights (a measured state is normalized).
  AliasTable sampler;
  /// Relative error of Z~ against ||v||_1.
  double zeta = 0.0;
};

/// Emulated state preparation for softmax(lw) from a norm estimate z_tilde
/// of ||exp(l - max l)||_1. Throws ZTildeOutOfRange when z_tilde is more
/// than a factor 1/2 away (relative) from the true norm.
PreparedState q_state_prepare_sampler(const LogWeights& lw, double z_tilde,
                                      QuantumCostModel& cost);

/// w . rho with relative error eps_i injected by `noise`.
double q_inner_product(std::span<const double> rho, std::span<const double> w, double eps_i,
                       const NoiseModel& noise, QuantumCostModel& cost, RandomStream& rng);

/// s draws from `sampler`. Charged as parameter search plus amplitude
/// amplified draws when s < n, or as s separate draws when s >= n.
std::vector<std::size_t> q_multi_sample(const AliasTable& sampler, std::size_t s, double eps,
                                        QuantumCostModel& cost, RandomStream& rng);

}  // namespace olps
