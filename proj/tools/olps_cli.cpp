// Command-line driver: run one of the four online portfolio algorithms on a
// CSV price file or a generated market and print the report.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "olps/engine.hpp"
#include "olps/error.hpp"
#include "olps/market.hpp"
#include "olps/report_io.hpp"

namespace {

constexpr int kExitRegime = 2;
constexpr int kExitInput = 3;

struct Options {
  std::string algorithm = "eg";
  std::string market = "gen:iid_uniform";
  std::size_t n = 2;
  std::size_t horizon = 100;
  std::optional<double> r_min;
  std::string r_min_policy = "reject";
  double delta = 0.05;
  double cost = 0.0;
  std::optional<double> eta;
  std::optional<std::uint64_t> s;
  std::string noise = "exact";
  std::uint64_t seed = 0;
  std::size_t replications = 1;
  std::string out;
  std::string format = "json";
  bool verbose = false;
};

std::function<olps::PriceRelativeSeries(std::uint64_t)> market_source(const Options& opt) {
  constexpr std::string_view kGen = "gen:";
  if (opt.market.starts_with(kGen)) {
    olps::MarketGenConfig base;
    base.kind = olps::market_kind_from_string(opt.market.substr(kGen.size()));
    base.assets = opt.n;
    base.horizon = opt.horizon;
    base.r_min = opt.r_min.value_or(0.5);
    return [base](std::uint64_t seed) {
      auto cfg = base;
      cfg.seed = seed;
      return olps::generate_market(cfg);
    };
  }
  const auto policy = opt.r_min_policy == "clamp" ? olps::RMinPolicy::Clamp : olps::RMinPolicy::Reject;
  auto rel = olps::relatives_from_prices(olps::load_csv(opt.market), policy, opt.r_min.value_or(0.0));
  return [rel = std::move(rel)](std::uint64_t) { return rel; };
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Online portfolio selection with exponentiated-gradient updates"};
  app.set_config("--config", "", "Flat key=value file using the flag names as keys");
  app.add_option("--algorithm", opt.algorithm, "eg | sampled | approx | quantum")
      ->check(CLI::IsMember({"eg", "sampled", "approx", "quantum"}));
  app.add_option("--market", opt.market, "CSV price file, or gen:<kind> for a synthetic market");
  app.add_option("--n", opt.n, "Assets in a generated market")->check(CLI::PositiveNumber);
  app.add_option("--T", opt.horizon, "Days in a generated market")->check(CLI::PositiveNumber);
  app.add_option("--r-min", opt.r_min, "Lower bound on price relatives");
  app.add_option("--r-min-policy", opt.r_min_policy, "reject | clamp (CSV input)")
      ->check(CLI::IsMember({"reject", "clamp"}));
  app.add_option("--delta", opt.delta, "Failure probability");
  app.add_option("--cost", opt.cost, "Transaction cost per asset invested in");
  app.add_option("--eta", opt.eta, "Learning rate override");
  app.add_option("--s", opt.s, "Samples per day override");
  app.add_option("--noise", opt.noise, "exact | worst+ | worst- | random")
      ->check(CLI::IsMember({"exact", "worst+", "worst-", "random"}));
  app.add_option("--seed", opt.seed, "Seed of the first replication");
  app.add_option("--replications", opt.replications, "Number of seeds to run")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", opt.out, "Output file (default stdout)");
  app.add_option("--format", opt.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--verbose", opt.verbose, "Include per-step records in JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    olps::RunConfig cfg;
    cfg.algorithm = olps::algorithm_from_string(opt.algorithm);
    cfg.delta = opt.delta;
    cfg.cost_per_trade = opt.cost;
    cfg.eta_override = opt.eta;
    cfg.s_override = opt.s;
    cfg.noise = olps::noise_from_string(opt.noise);
    cfg.seed = opt.seed;
    cfg.record_portfolios = opt.verbose;

    const auto reports = olps::replicate(market_source(opt), cfg, opt.replications);

    std::ofstream file;
    if (!opt.out.empty()) {
      file.open(opt.out);
      if (!file) throw olps::Error(olps::ErrorCode::InvalidArgument, "cannot write " + opt.out);
    }
    std::ostream& out = opt.out.empty() ? std::cout : file;
    if (opt.format == "csv") {
      olps::write_csv(out, reports);
    } else if (reports.size() == 1) {
      out << olps::to_json(reports.front(), opt.verbose).dump(2) << '\n';
    } else {
      out << olps::to_json(reports, opt.verbose).dump(2) << '\n';
    }
    return 0;
  } catch (const olps::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return olps::is_regime_refusal(e.code()) ? kExitRegime : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
