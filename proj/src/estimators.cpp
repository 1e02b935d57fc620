#include "olps/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "olps/error.hpp"
#include "olps/kernels.hpp"

namespace olps {

namespace {

std::uint64_t ceil_count(double x) {
  return x <= 0.0 ? 0 : static_cast<std::uint64_t>(std::ceil(x));
}

void check_unit_interval(double value, const char* name) {
  if (!(value > 0.0 && value < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must lie in (0, 1), got " +
                                                std::to_string(value));
  }
}

double median(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace

std::uint64_t sample_count(std::size_t horizon, double r_min, double delta) {
  if (horizon == 0) throw Error(ErrorCode::InvalidArgument, "T must be >= 1");
  const double t = static_cast<double>(horizon);
  const double spread = 1.0 - r_min;
  return std::max<std::uint64_t>(1, ceil_count(2.0 * t * spread * spread * std::log(t / delta)));
}

std::uint64_t mom_sample_count(double eps, double delta) {
  return ceil_count(27.0 / (eps * eps) * std::log(1.0 / delta));
}

std::uint64_t mom_group_count(double delta) {
  return std::max<std::uint64_t>(1, ceil_count(std::log(1.0 / delta)));
}

Estimate mom_inner_product(std::span<const double> x, const AliasTable& p, double eps,
                           double delta, RandomStream& rng) {
  check_unit_interval(eps, "eps");
  check_unit_interval(delta, "delta");
  if (x.size() != p.size()) throw Error(ErrorCode::InvalidArgument, "x and p lengths differ");

  const std::uint64_t total = mom_sample_count(eps, delta);
  const std::uint64_t groups = std::min(mom_group_count(delta), total);
  std::vector<double> means;
  means.reserve(groups);
  for (std::uint64_t g = 0; g < groups; ++g) {
    const std::uint64_t size = total / groups + (g < total % groups ? 1 : 0);
    // Accumulate deviations from the first draw so constant inputs are exact.
    const double anchor = x[p.sample(rng)];
    double deviation = 0.0;
    for (std::uint64_t k = 1; k < size; ++k) deviation += x[p.sample(rng)] - anchor;
    means.push_back(anchor + deviation / static_cast<double>(size));
  }

  Estimate out;
  out.value = median(means);
  out.budget.eps = eps;
  out.budget.delta = delta;
  out.budget.add(total);
  return out;
}

RelativeEstimate relative_inner_product(std::span<const double> x, const AliasTable& p,
                                        double eps_i, double delta, RandomStream& rng,
                                        std::optional<double> x_min) {
  const double floor = x_min.value_or(x.empty() ? 0.0 : *std::min_element(x.begin(), x.end()));
  if (!(floor > 0.0)) throw Error(ErrorCode::InvalidArgument, "x_min must be positive");
  if (eps_i > floor) {
    throw Error(ErrorCode::EpsExceedsXMin, "eps_I = " + std::to_string(eps_i) + " > x_min = " +
                                               std::to_string(floor));
  }
  RelativeEstimate out;
  const Estimate first = mom_inner_product(x, p, eps_i, delta, rng);
  out.first_stage = first.value;
  out.first_stage_samples = first.budget.samples_used;

  const double refined_eps = eps_i * std::sqrt(first.value) / 2.0;
  const Estimate second = mom_inner_product(x, p, refined_eps, delta, rng);
  out.second_stage_samples = second.budget.samples_used;
  out.value = second.value;
  out.budget.eps = eps_i;
  out.budget.delta = delta;
  out.budget.add(first.budget.samples_used);
  out.budget.add(second.budget.samples_used);
  return out;
}

double NoiseModel::apply(double truth, double eps, RandomStream& rng) const {
  if (!(eps >= 0.0 && eps < 0.5)) {
    throw Error(ErrorCode::InvalidArgument, "noise magnitude " + std::to_string(eps) +
                                                " outside [0, 1/2)");
  }
  switch (kind) {
    case NoiseKind::Exact: return truth;
    case NoiseKind::WorstCaseSign: return truth * (1.0 + sign * eps);
    case NoiseKind::UniformRandom: return truth * (1.0 + rng.uniform(-eps, eps));
  }
  return truth;
}

std::string_view to_string(const NoiseModel& noise) {
  switch (noise.kind) {
    case NoiseKind::Exact: return "exact";
    case NoiseKind::WorstCaseSign: return noise.sign > 0 ? "worst+" : "worst-";
    case NoiseKind::UniformRandom: return "random";
  }
  return "exact";
}

NoiseModel noise_from_string(std::string_view name) {
  if (name == "exact") return NoiseModel::exact();
  if (name == "worst+") return NoiseModel::worst_case(+1);
  if (name == "worst-") return NoiseModel::worst_case(-1);
  if (name == "random") return NoiseModel::uniform_random();
  throw Error(ErrorCode::InvalidArgument, "unknown noise model '" + std::string(name) + "'");
}

std::string_view to_string(Subroutine s) {
  switch (s) {
    case Subroutine::MaxFinding: return "max_finding";
    case Subroutine::NormEstimation: return "norm_estimation";
    case Subroutine::StatePreparation: return "state_preparation";
    case Subroutine::MultiSampleParameters: return "multisample_parameters";
    case Subroutine::MultiSampleDraws: return "multisample_draws";
    case Subroutine::MultiSampleFallback: return "multisample_fallback";
    case Subroutine::InnerProduct: return "inner_product";
    case Subroutine::PriceQuery: return "price_query";
    case Subroutine::kCount: break;
  }
  return "unknown";
}

QuantumCostModel::QuantumCostModel(std::size_t n, std::size_t horizon, double r_min,
                                   double delta)
    : n_(n), horizon_(horizon), r_min_(r_min), delta_(delta) {
  if (n == 0 || horizon == 0) throw Error(ErrorCode::InvalidArgument, "n and T must be >= 1");
  check_unit_interval(delta, "delta");
}

double QuantumCostModel::log_factor() const noexcept {
  return std::log(4.0 * static_cast<double>(horizon_) / delta_);
}

void QuantumCostModel::charge(Subroutine s, std::uint64_t calls) {
  calls_[static_cast<std::size_t>(s)] += calls;
  unitary_calls_ += calls;
  oracle_queries_ += calls * static_cast<std::uint64_t>(step_);
  if (s == Subroutine::MultiSampleFallback) ++fallback_steps_;
}

namespace charges {

std::uint64_t max_finding(std::size_t n, double log_factor) {
  return ceil_count(std::sqrt(static_cast<double>(n)) * log_factor);
}

std::uint64_t norm_estimation(std::size_t n, double eps_z, double log_factor) {
  return ceil_count(std::sqrt(static_cast<double>(n)) / eps_z * log_factor);
}

std::uint64_t state_preparation(std::size_t n, double log_factor) {
  return ceil_count(std::sqrt(static_cast<double>(n)) * log_factor);
}

std::uint64_t inner_product_rounds(std::size_t n, double eps_i, double r_min) {
  return ceil_count(6.0 * std::numbers::pi * std::sqrt(static_cast<double>(n)) /
                    (eps_i * std::sqrt(r_min)));
}

std::uint64_t inner_product(std::size_t n, double eps_i, double r_min, double log_factor) {
  return inner_product_rounds(n, eps_i, r_min) * ceil_count(log_factor);
}

std::uint64_t multisample_parameters(std::size_t s, std::size_t n, double eps, double log_factor) {
  const double root = std::sqrt(static_cast<double>(s) * static_cast<double>(n));
  return ceil_count((root + root / eps) * log_factor);
}

std::uint64_t multisample_draws(std::size_t s, std::size_t n, double log_factor) {
  return ceil_count(std::sqrt(static_cast<double>(s) * static_cast<double>(n)) * log_factor);
}

std::uint64_t multisample_fallback(std::size_t s, std::size_t n) {
  return ceil_count(static_cast<double>(s) * std::sqrt(static_cast<double>(n)));
}

}  // namespace charges

std::pair<std::size_t, double> q_max_find(std::span<const double> values,
                                          QuantumCostModel& cost) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "max finding over empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  cost.charge(Subroutine::MaxFinding, charges::max_finding(values.size(), cost.log_factor()));
  return {best, values[best]};
}

double q_norm_estimate(std::span<const double> v, double eps_z, const NoiseModel& noise,
                       QuantumCostModel& cost, RandomStream& rng) {
  const double norm = kernels::sum(v);
  const double estimate = noise.apply(norm, eps_z, rng);
  if (eps_z > 0.0) {
    cost.charge(Subroutine::NormEstimation,
                charges::norm_estimation(v.size(), eps_z, cost.log_factor()));
  }
  return estimate;
}

PreparedState q_state_prepare_sampler(const LogWeights& lw, double z_tilde,
                                      QuantumCostModel& cost) {
  if (lw.exponents.empty()) throw Error(ErrorCode::InvalidArgument, "empty log weights");
  const double top = kernels::max(lw.exponents);
  std::vector<double> v(lw.exponents.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(lw.exponents[i] - top);
  const double norm = kernels::sum(v);
  const double zeta = std::abs(z_tilde - norm) / norm;
  if (!(z_tilde > 0.0) || !(zeta <= 0.5)) {
    throw Error(ErrorCode::ZTildeOutOfRange, "Z~ = " + std::to_string(z_tilde) +
                                                 " vs ||v||_1 = " + std::to_string(norm));
  }
  kernels::scale(1.0 / z_tilde, v);
  PreparedState out{std::move(v), AliasTable{}, zeta};
  out.sampler = AliasTable::build_unnormalized(out.weights);
  cost.charge(Subroutine::StatePreparation,
              charges::state_preparation(out.weights.size(), cost.log_factor()));
  return out;
}

double q_inner_product(std::span<const double> rho, std::span<const double> w, double eps_i,
                       const NoiseModel& noise, QuantumCostModel& cost, RandomStream& rng) {
  if (rho.size() != w.size()) throw Error(ErrorCode::InvalidArgument, "rho and w lengths differ");
  const double truth = kernels::dot(w, rho);
  const double estimate = noise.apply(truth, eps_i, rng);
  if (eps_i > 0.0) {
    cost.charge(Subroutine::InnerProduct,
                charges::inner_product(rho.size(), eps_i, cost.r_min(), cost.log_factor()));
  }
  return estimate;
}

std::vector<std::size_t> q_multi_sample(const AliasTable& sampler, std::size_t s, double eps,
                                        QuantumCostModel& cost, RandomStream& rng) {
  if (s == 0) throw Error(ErrorCode::InvalidS, "s must be >= 1");
  const std::size_t n = sampler.size();
  if (s < n) {
    cost.charge(Subroutine::MultiSampleParameters,
                charges::multisample_parameters(s, n, eps, cost.log_factor()));
    cost.charge(Subroutine::MultiSampleDraws, charges::multisample_draws(s, n, cost.log_factor()));
  } else {
    cost.charge(Subroutine::MultiSampleFallback, charges::multisample_fallback(s, n));
  }
  return sampler.multi_sample(s, rng);
}

}  // namespace olps
