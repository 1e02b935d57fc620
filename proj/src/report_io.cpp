#include "olps/report_io.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace olps {

namespace {

nlohmann::json params_json(const RunParams& p) {
  return {{"n", p.n},
          {"T", p.horizon},
          {"r_min", p.r_min},
          {"delta", p.delta},
          {"cost", p.cost_per_trade},
          {"eta", p.eta},
          {"eps_i", p.eps_i},
          {"eps_z", p.eps_z},
          {"s", p.s},
          {"seed", p.seed},
          {"noise", std::string(to_string(p.noise))},
          {"charge_constants", "nominal"}};
}

nlohmann::json counter_json(const SuccessCounter& c) {
  return {{"ok", c.ok}, {"trials", c.trials}};
}

nlohmann::json step_json(const StepRecord& s) {
  nlohmann::json j = {{"t", s.t},
                      {"realized", s.realized},
                      {"expected", s.expected},
                      {"cost", s.cost},
                      {"queries", s.queries},
                      {"estimator_ok", s.estimator_ok},
                      {"hoeffding_ok", s.hoeffding_ok}};
  if (!s.portfolio.empty()) j["portfolio"] = s.portfolio;
  if (!s.samples.empty()) j["samples"] = s.samples;
  if (s.i_tilde) j["i_tilde"] = *s.i_tilde;
  if (s.z_tilde) j["z_tilde"] = *s.z_tilde;
  return j;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json to_json(const RunReport& report, bool verbose) {
  nlohmann::json j = {
      {"algorithm", std::string(to_string(report.algorithm))},
      {"params", params_json(report.params)},
      {"ls_achieved", report.ls_achieved},
      {"ls_star", report.ls_star},
      {"offline_residual", report.offline_residual},
      {"regret", report.regret},
      {"regret_bound", report.regret_bound},
      {"bound_satisfied", report.bound_satisfied},
      {"wealth_factor", wealth_factor(report)},
      {"total_cost", report.total_cost},
      {"total_queries", report.total_queries},
      {"success_events",
       {{"hoeffding", counter_json(report.hoeffding)},
        {"estimator", counter_json(report.estimator)}}},
  };
  if (report.algorithm == Algorithm::QuantumEmulated) {
    j["unitary_calls"] = report.unitary_calls;
    j["subroutine_calls"] = report.subroutine_calls;
    j["multisample_fallback_steps"] = report.multisample_fallback_steps;
  }
  if (verbose) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : report.steps) steps.push_back(step_json(s));
    j["per_step"] = std::move(steps);
  }
  return j;
}

nlohmann::json to_json(std::span<const RunReport> reports, bool verbose) {
  nlohmann::json runs = nlohmann::json::array();
  std::size_t satisfied = 0;
  double regret_sum = 0.0;
  for (const auto& r : reports) {
    runs.push_back(to_json(r, verbose));
    satisfied += r.bound_satisfied ? 1 : 0;
    regret_sum += r.regret;
  }
  const double count = reports.empty() ? 1.0 : static_cast<double>(reports.size());
  return {{"runs", std::move(runs)},
          {"summary",
           {{"replications", reports.size()},
            {"bound_satisfied", satisfied},
            {"bound_satisfied_fraction", static_cast<double>(satisfied) / count},
            {"mean_regret", regret_sum / count}}}};
}

void write_csv(std::ostream& out, std::span<const RunReport> reports) {
  out << "algorithm,seed,n,T,r_min,delta,cost,eta,eps_i,eps_z,s,noise,ls_achieved,ls_star,"
         "regret,regret_bound,bound_satisfied,total_cost,total_queries,hoeffding_ok,"
         "estimator_ok\n";
  for (const auto& r : reports) {
    const auto& p = r.params;
    out << to_string(r.algorithm) << ',' << p.seed << ',' << p.n << ',' << p.horizon << ','
        << fmt(p.r_min) << ',' << fmt(p.delta) << ',' << fmt(p.cost_per_trade) << ','
        << fmt(p.eta) << ',' << fmt(p.eps_i) << ',' << fmt(p.eps_z) << ',' << p.s << ','
        << to_string(p.noise) << ',' << fmt(r.ls_achieved) << ',' << fmt(r.ls_star) << ','
        << fmt(r.regret) << ',' << fmt(r.regret_bound) << ',' << (r.bound_satisfied ? 1 : 0)
        << ',' << fmt(r.total_cost) << ',' << r.total_queries << ',' << r.hoeffding.ok << ','
        << r.estimator.ok << '\n';
  }
}

}  // namespace olps
