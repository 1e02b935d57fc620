#include "olps/engine.hpp"

#include <cmath>
#include <string>

#include "olps/error.hpp"
#include "olps/kernels.hpp"
#include "olps/sampler.hpp"
#include "olps/updates.hpp"

namespace olps {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Eg: return "eg";
    case Algorithm::Sampled: return "sampled";
    case Algorithm::Approx: return "approx";
    case Algorithm::QuantumEmulated: return "quantum";
  }
  return "eg";
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "eg") return Algorithm::Eg;
  if (name == "sampled") return Algorithm::Sampled;
  if (name == "approx") return Algorithm::Approx;
  if (name == "quantum") return Algorithm::QuantumEmulated;
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

double regret_bound(Algorithm algorithm, std::size_t n, std::size_t horizon, double r_min) {
  double constant = 1.0;
  switch (algorithm) {
    case Algorithm::Eg: constant = 1.0; break;
    case Algorithm::Sampled: constant = 2.0; break;
    case Algorithm::Approx: constant = 8.0; break;
    case Algorithm::QuantumEmulated: constant = 12.0; break;
  }
  return constant / r_min *
         std::sqrt(std::log(static_cast<double>(n)) / (2.0 * static_cast<double>(horizon)));
}

namespace {

void validate(const PriceRelativeSeries& rel, const RunConfig& cfg) {
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0 / 3.0)) {
    throw Error(ErrorCode::InvalidArgument, "delta must lie in (0, 1/3), got " +
                                                std::to_string(cfg.delta));
  }
  if (!(cfg.cost_per_trade >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "cost per trade must be >= 0");
  }
  if (cfg.eta_override && !(*cfg.eta_override >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "eta must be >= 0");
  }
  if (cfg.s_override && *cfg.s_override == 0) throw Error(ErrorCode::InvalidS, "s must be >= 1");
  if (rel.horizon() == 0) throw Error(ErrorCode::InvalidArgument, "empty market");
}

RunParams base_params(const PriceRelativeSeries& rel, const RunConfig& cfg) {
  RunParams p;
  p.n = rel.assets();
  p.horizon = rel.horizon();
  p.r_min = rel.r_min();
  p.delta = cfg.delta;
  p.cost_per_trade = cfg.cost_per_trade;
  p.eta = cfg.eta_override.value_or(learning_rate(p.n, p.horizon, p.r_min));
  const UpdateParams derived = UpdateParams::from_eta(p.eta, p.r_min, p.delta);
  p.eps_i = cfg.eps_i_override.value_or(derived.eps_i);
  p.eps_z = cfg.eps_z_override.value_or(derived.eps_z);
  p.seed = cfg.seed;
  p.noise = cfg.noise;
  return p;
}

std::uint64_t sample_size(const RunParams& p, const RunConfig& cfg) {
  return cfg.s_override.value_or(sample_count(p.horizon, p.r_min, p.delta));
}

void require_eps_i_below_half(const RunParams& p) {
  if (!(p.eps_i < 0.5)) {
    throw Error(ErrorCode::EpsIExceedsRMin,
                "eps_I = 3 eta / (4 r_min) = " + std::to_string(p.eps_i) +
                    " must be < 1/2 (eta = " + std::to_string(p.eta) +
                    ", r_min = " + std::to_string(p.r_min) + ", T = " + std::to_string(p.horizon) + ")");
  }
}

double sampled_mean(std::span<const double> rho, std::span<const std::size_t> picks) {
  double total = 0.0;
  for (auto i : picks) total += rho[i];
  return total / static_cast<double>(picks.size());
}

void finish(RunReport& report, const PriceRelativeSeries& rel, const RunConfig& cfg,
            const std::optional<OfflineSolution>& offline) {
  report.ls_achieved = ls_from_steps(report);
  const OfflineSolution solution =
      offline ? *offline : solve_offline(rel, cfg.offline_tol, cfg.offline_max_iter);
  report.ls_star = solution.ls_star;
  report.offline_residual = solution.gradient_residual;
  report.regret = report.ls_star - report.ls_achieved;
  report.regret_bound = regret_bound(report.algorithm, rel.assets(), rel.horizon(), rel.r_min());
  report.bound_satisfied = report.regret <= report.regret_bound + 10.0 * cfg.offline_tol;
}

RunReport execute_alg1(const PriceRelativeSeries& rel, const RunConfig& cfg,
                       const std::optional<OfflineSolution>& offline) {
  RunReport report;
  report.algorithm = Algorithm::Eg;
  report.params = base_params(rel, cfg);
  const RunParams& p = report.params;
  const double step_cost = static_cast<double>(p.n) * p.cost_per_trade;

  Portfolio w = Portfolio::uniform(p.n);
  report.steps.reserve(p.horizon);
  for (std::size_t t = 0; t < p.horizon; ++t) {
    const auto rho = rel.row(t);
    StepRecord step;
    step.t = t + 1;
    if (cfg.record_portfolios) step.portfolio.assign(w.weights().begin(), w.weights().end());
    step.realized = kernels::dot(w.weights(), rho);
    step.expected = step.realized;
    step.cost = step_cost;
    step.queries = p.n;
    report.steps.push_back(std::move(step));
    w = eg_update(w, rho, p.eta);
  }
  report.total_cost = static_cast<double>(p.horizon) * static_cast<double>(p.n) * p.cost_per_trade;
  report.total_queries = static_cast<std::uint64_t>(p.horizon) * p.n;
  finish(report, rel, cfg, offline);
  return report;
}

RunReport execute_alg2(const PriceRelativeSeries& rel, const RunConfig& cfg,
                       const std::optional<OfflineSolution>& offline) {
  RunReport report;
  report.algorithm = Algorithm::Sampled;
  report.params = base_params(rel, cfg);
  RunParams& p = report.params;
  p.s = sample_size(p, cfg);
  const double q = std::sqrt(1.0 / (2.0 * static_cast<double>(p.horizon)));
  RandomStream rng(cfg.seed);

  Portfolio w = Portfolio::uniform(p.n);
  report.steps.reserve(p.horizon);
  for (std::size_t t = 0; t < p.horizon; ++t) {
    const auto rho = rel.row(t);
    const AliasTable table = AliasTable::build(w.weights());
    StepRecord step;
    step.t = t + 1;
    if (cfg.record_portfolios) step.portfolio.assign(w.weights().begin(), w.weights().end());
    step.samples = table.multi_sample(p.s, rng);
    step.realized = sampled_mean(rho, step.samples);
    step.expected = kernels::dot(w.weights(), rho);
    step.hoeffding_ok = std::abs(step.realized - step.expected) <= q;
    report.hoeffding.record(step.hoeffding_ok);
    step.cost = static_cast<double>(p.s) * p.cost_per_trade;
    step.queries = p.n;
    report.steps.push_back(std::move(step));
    w = eg_update(w, rho, p.eta);
  }
  report.total_cost = static_cast<double>(p.horizon) * static_cast<double>(p.s) * p.cost_per_trade;
  report.total_queries = static_cast<std::uint64_t>(p.horizon) * p.n;
  finish(report, rel, cfg, offline);
  return report;
}

RunReport execute_alg3(const PriceRelativeSeries& rel, const RunConfig& cfg,
                       const std::optional<OfflineSolution>& offline) {
  RunReport report;
  report.algorithm = Algorithm::Approx;
  report.params = base_params(rel, cfg);
  RunParams& p = report.params;
  p.eps_z = 0.0;  // exact normalization
  p.s = sample_size(p, cfg);
  require_eps_i_below_half(p);
  if (p.eps_i > p.r_min) {
    throw Error(ErrorCode::EpsIExceedsRMin,
                "eps_I = 3 eta / (4 r_min) = " + std::to_string(p.eps_i) + " exceeds r_min = " +
                    std::to_string(p.r_min) + " (eta = " + std::to_string(p.eta) +
                    ", n = " + std::to_string(p.n) + ", T = " + std::to_string(p.horizon) + ")");
  }
  const double q = std::sqrt(1.0 / (2.0 * static_cast<double>(p.horizon)));
  const double step_delta = p.delta / static_cast<double>(p.horizon);
  RandomStream sample_rng(cfg.seed);
  RandomStream estimator_rng = sample_rng.split();

  Portfolio w = Portfolio::uniform(p.n);
  report.steps.reserve(p.horizon);
  std::uint64_t queries = 0;
  for (std::size_t t = 0; t < p.horizon; ++t) {
    const auto rho = rel.row(t);
    const AliasTable table = AliasTable::build(w.weights());
    StepRecord step;
    step.t = t + 1;
    if (cfg.record_portfolios) step.portfolio.assign(w.weights().begin(), w.weights().end());
    step.samples = table.multi_sample(p.s, sample_rng);
    step.realized = sampled_mean(rho, step.samples);
    step.expected = kernels::dot(w.weights(), rho);
    step.hoeffding_ok = std::abs(step.realized - step.expected) <= q;
    report.hoeffding.record(step.hoeffding_ok);
    step.cost = static_cast<double>(p.s) * p.cost_per_trade;

    double i_tilde = step.expected;
    step.queries = p.n;  // exact normalization reads the whole row
    if (p.eps_i > 0.0) {
      const RelativeEstimate est =
          relative_inner_product(rho, table, p.eps_i, step_delta, estimator_rng, p.r_min);
      i_tilde = est.value;
      step.queries += est.budget.queries_charged;
    }
    step.i_tilde = i_tilde;
    step.estimator_ok = std::abs(i_tilde - step.expected) <= p.eps_i * step.expected;
    report.estimator.record(step.estimator_ok);
    queries += step.queries;
    report.steps.push_back(std::move(step));
    w = Portfolio(eeg_update(w.weights(), rho, p.eta, i_tilde));
  }
  report.total_cost = static_cast<double>(p.horizon) * static_cast<double>(p.s) * p.cost_per_trade;
  report.total_queries = queries;
  finish(report, rel, cfg, offline);
  return report;
}

RunReport execute_alg4(const PriceRelativeSeries& rel, const RunConfig& cfg,
                       const std::optional<OfflineSolution>& offline) {
  RunReport report;
  report.algorithm = Algorithm::QuantumEmulated;
  report.params = base_params(rel, cfg);
  RunParams& p = report.params;
  p.s = sample_size(p, cfg);
  require_eps_i_below_half(p);
  if (!(p.eps_z < 0.5)) {
    throw Error(ErrorCode::EpsZTooLarge,
                "eps_Z = eta^2 / r_min^2 = " + std::to_string(p.eps_z) + " must be < 1/2 (eta = " +
                    std::to_string(p.eta) + ", r_min = " + std::to_string(p.r_min) +
                    ", T = " + std::to_string(p.horizon) + ")");
  }
  const double q = std::sqrt(1.0 / (2.0 * static_cast<double>(p.horizon)));
  RandomStream sample_rng(cfg.seed);
  RandomStream noise_rng = sample_rng.split();
  QuantumCostModel cost(p.n, p.horizon, p.r_min, p.delta);

  // Uniform start: no history has been pushed yet.
  LogWeights history = LogWeights::empty(p.n, p.eta);
  std::vector<double> v(p.n);
  report.steps.reserve(p.horizon);
  for (std::size_t t = 0; t < p.horizon; ++t) {
    const auto rho = rel.row(t);
    cost.set_step(t + 1);
    const std::uint64_t before = cost.oracle_queries();
    StepRecord step;
    step.t = t + 1;

    const auto [arg_max, top] = q_max_find(history.exponents, cost);
    (void)arg_max;
    for (std::size_t i = 0; i < p.n; ++i) v[i] = std::exp(history.exponents[i] - top);
    const double z_tilde = q_norm_estimate(v, p.eps_z, p.noise, cost, noise_rng);
    step.z_tilde = z_tilde;

    const PreparedState state = q_state_prepare_sampler(history, z_tilde, cost);
    const std::vector<double> invested = state.sampler.distribution();
    if (cfg.record_portfolios) step.portfolio = invested;
    step.samples = q_multi_sample(state.sampler, p.s, cfg.multisample_eps, cost, sample_rng);
    step.realized = sampled_mean(rho, step.samples);
    step.expected = kernels::dot(invested, rho);
    step.hoeffding_ok = std::abs(step.realized - step.expected) <= q;
    report.hoeffding.record(step.hoeffding_ok);
    step.cost = static_cast<double>(p.s) * p.cost_per_trade;

    cost.charge(Subroutine::PriceQuery, 1);
    const double truth = kernels::dot(state.weights, rho);
    const double i_tilde = q_inner_product(rho, state.weights, p.eps_i, p.noise, cost, noise_rng);
    step.i_tilde = i_tilde;
    step.estimator_ok = std::abs(i_tilde - truth) <= p.eps_i * truth;
    report.estimator.record(step.estimator_ok);
    history.push(rho, i_tilde);

    step.queries = cost.oracle_queries() - before;
    report.steps.push_back(std::move(step));
  }
  report.total_cost = static_cast<double>(p.horizon) * static_cast<double>(p.s) * p.cost_per_trade;
  report.total_queries = cost.oracle_queries();
  report.unitary_calls = cost.unitary_calls();
  report.multisample_fallback_steps = cost.fallback_steps();
  for (std::size_t k = 0; k < static_cast<std::size_t>(Subroutine::kCount); ++k) {
    const auto s = static_cast<Subroutine>(k);
    report.subroutine_calls[std::string(to_string(s))] = cost.calls(s);
  }
  finish(report, rel, cfg, offline);
  return report;
}

void require_algorithm(const RunConfig& cfg, Algorithm expected) {
  if (cfg.algorithm != expected) {
    throw Error(ErrorCode::InvalidArgument, "config selects '" +
                                                std::string(to_string(cfg.algorithm)) +
                                                "', expected '" + std::string(to_string(expected)) + "'");
  }
}

}  // namespace

RunReport run_alg1(const PriceRelativeSeries& rel, const RunConfig& cfg) {
  require_algorithm(cfg, Algorithm::Eg);
  return run(rel, cfg);
}

RunReport run_alg2(const PriceRelativeSeries& rel, const RunConfig& cfg) {
  require_algorithm(cfg, Algorithm::Sampled);
  return run(rel, cfg);
}

RunReport run_alg3(const PriceRelativeSeries& rel, const RunConfig& cfg) {
  require_algorithm(cfg, Algorithm::Approx);
  return run(rel, cfg);
}

RunReport run_alg4(const PriceRelativeSeries& rel, const RunConfig& cfg) {
  require_algorithm(cfg, Algorithm::QuantumEmulated);
  return run(rel, cfg);
}

RunReport run(const PriceRelativeSeries& rel, const RunConfig& cfg,
              const std::optional<OfflineSolution>& offline) {
  validate(rel, cfg);
  switch (cfg.algorithm) {
    case Algorithm::Eg: return execute_alg1(rel, cfg, offline);
    case Algorithm::Sampled: return execute_alg2(rel, cfg, offline);
    case Algorithm::Approx: return execute_alg3(rel, cfg, offline);
    case Algorithm::QuantumEmulated: return execute_alg4(rel, cfg, offline);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm");
}

double ls_from_steps(const RunReport& report) {
  if (report.steps.empty()) return 0.0;
  double total = 0.0;
  for (const auto& step : report.steps) total += std::log(step.realized);
  return total / static_cast<double>(report.steps.size());
}

double wealth_factor(const RunReport& report) {
  return std::exp(static_cast<double>(report.steps.size()) * report.ls_achieved);
}

std::vector<RunReport> replicate(const std::function<PriceRelativeSeries(std::uint64_t)>& market,
                                 const RunConfig& cfg, std::size_t replications) {
  std::vector<RunReport> out;
  out.reserve(replications);
  for (std::size_t r = 0; r < replications; ++r) {
    RunConfig local = cfg;
    local.seed = cfg.seed + r;
    out.push_back(run(market(local.seed), local));
  }
  return out;
}

}  // namespace olps
