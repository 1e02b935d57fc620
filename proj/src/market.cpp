#include "olps/market.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string_view>

#include "olps/error.hpp"
#include "olps/kernels.hpp"
#include "olps/random.hpp"
#include "olps/updates.hpp"

namespace olps {

PriceSeries::PriceSeries(std::vector<std::string> asset_names,
                         std::vector<std::vector<double>> rows)
    : names_(std::move(asset_names)) {
  if (rows.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two days of prices");
  assets_ = rows.front().size();
  if (assets_ == 0) throw Error(ErrorCode::InvalidArgument, "need at least one asset");
  if (names_.empty()) {
    for (std::size_t i = 0; i < assets_; ++i) names_.push_back("asset" + std::to_string(i));
  }
  if (names_.size() != assets_) throw Error(ErrorCode::RaggedRows, "header width differs from rows");
  days_ = rows.size();
  prices_.reserve(days_ * assets_);
  for (std::size_t d = 0; d < days_; ++d) {
    if (rows[d].size() != assets_) {
      throw Error(ErrorCode::RaggedRows, "day " + std::to_string(d) + " has " +
                                             std::to_string(rows[d].size()) + " prices, expected " +
                                             std::to_string(assets_));
    }
    for (std::size_t i = 0; i < assets_; ++i) {
      const double p = rows[d][i];
      if (!(p > 0.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::NonPositivePrice, "day " + std::to_string(d) + ", asset " +
                                                     names_[i] + ": " + std::to_string(p));
      }
      prices_.push_back(p);
    }
  }
}

PriceRelativeSeries::PriceRelativeSeries(std::size_t assets, std::vector<double> relatives,
                                         double r_min)
    : assets_(assets), horizon_(0), relatives_(std::move(relatives)), r_min_(r_min) {
  if (assets_ == 0 || relatives_.empty() || relatives_.size() % assets_ != 0) {
    throw Error(ErrorCode::InvalidArgument, "relatives must form a non-empty T x n matrix");
  }
  if (!(r_min_ > 0.0 && r_min_ <= 1.0)) {
    throw Error(ErrorCode::RMinViolation, "r_min = " + std::to_string(r_min_) + " not in (0, 1]");
  }
  horizon_ = relatives_.size() / assets_;
  for (std::size_t t = 0; t < horizon_; ++t) {
    const auto r = row(t);
    const double top = kernels::max(r);
    if (std::abs(top - 1.0) > kRowMaxTolerance) {
      throw Error(ErrorCode::InvalidArgument,
                  "row " + std::to_string(t) + " has maximum " + std::to_string(top));
    }
    for (double v : r) {
      if (!(v >= r_min_) || v > 1.0 + kRowMaxTolerance) {
        throw Error(ErrorCode::RMinViolation, "row " + std::to_string(t) + " entry " +
                                                  std::to_string(v) + " outside [r_min, 1]");
      }
    }
  }
}

PriceRelativeSeries PriceRelativeSeries::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != assets_) throw Error(ErrorCode::InvalidArgument, "permutation size");
  std::vector<double> out(relatives_.size());
  for (std::size_t t = 0; t < horizon_; ++t) {
    for (std::size_t j = 0; j < assets_; ++j) out[t * assets_ + j] = relatives_[t * assets_ + perm[j]];
  }
  return PriceRelativeSeries(assets_, std::move(out), r_min_);
}

PriceRelativeSeries relatives_from_prices(const PriceSeries& prices, RMinPolicy policy,
                                          double r_min_floor) {
  const std::size_t n = prices.assets();
  const std::size_t horizon = prices.days() - 1;
  if (policy == RMinPolicy::Clamp && !(r_min_floor > 0.0 && r_min_floor <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "clamp policy needs a floor in (0, 1]");
  }

  std::vector<double> rel(horizon * n);
  for (std::size_t t = 0; t < horizon; ++t) {
    const auto prev = prices.day(t);
    const auto cur = prices.day(t + 1);
    double* out = rel.data() + t * n;
    for (std::size_t i = 0; i < n; ++i) out[i] = cur[i] / prev[i];
    const double top = *std::max_element(out, out + n);
    // x / x is exactly 1, so the arg-max entry lands on 1.0.
    for (std::size_t i = 0; i < n; ++i) out[i] /= top;
  }

  const double observed = *std::min_element(rel.begin(), rel.end());
  double r_min = observed;
  if (policy == RMinPolicy::Reject) {
    if (!(observed > 0.0)) {
      throw Error(ErrorCode::RMinViolation, "observed minimum relative " + std::to_string(observed));
    }
    if (r_min_floor > 0.0 && observed < r_min_floor) {
      throw Error(ErrorCode::RMinViolation, "observed minimum relative " + std::to_string(observed) +
                                                " below floor " + std::to_string(r_min_floor));
    }
  } else {
    for (std::size_t t = 0; t < horizon; ++t) {
      double* out = rel.data() + t * n;
      for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], r_min_floor);
      const double top = *std::max_element(out, out + n);
      for (std::size_t i = 0; i < n; ++i) out[i] /= top;
    }
    r_min = r_min_floor;
  }
  return PriceRelativeSeries(n, std::move(rel), r_min);
}

std::string to_string(MarketKind kind) {
  switch (kind) {
    case MarketKind::IidUniform: return "iid_uniform";
    case MarketKind::TwoAssetAlternating: return "two_asset_alternating";
    case MarketKind::AdversarialFollowLeader: return "adversarial_follow_leader";
  }
  return "unknown";
}

MarketKind market_kind_from_string(const std::string& name) {
  if (name == "iid_uniform") return MarketKind::IidUniform;
  if (name == "two_asset_alternating") return MarketKind::TwoAssetAlternating;
  if (name == "adversarial_follow_leader") return MarketKind::AdversarialFollowLeader;
  throw Error(ErrorCode::UnsupportedKind, "unknown market kind '" + name + "'");
}

PriceRelativeSeries generate_market(const MarketGenConfig& cfg) {
  const std::size_t n = cfg.assets;
  const std::size_t horizon = cfg.horizon;
  if (n == 0 || horizon == 0) throw Error(ErrorCode::InvalidArgument, "n and T must be >= 1");
  if (!(cfg.r_min > 0.0 && cfg.r_min <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "r_min must lie in (0, 1]");
  }
  if (cfg.kind != MarketKind::IidUniform && n < 2) {
    throw Error(ErrorCode::UnsupportedKind, to_string(cfg.kind) + " needs n >= 2");
  }

  RandomStream rng(cfg.seed);
  std::vector<double> rel(horizon * n);
  switch (cfg.kind) {
    case MarketKind::IidUniform:
      for (std::size_t t = 0; t < horizon; ++t) {
        double* out = rel.data() + t * n;
        for (std::size_t i = 0; i < n; ++i) out[i] = rng.uniform(cfg.r_min, 1.0);
        const double top = *std::max_element(out, out + n);
        for (std::size_t i = 0; i < n; ++i) out[i] /= top;
      }
      break;
    case MarketKind::TwoAssetAlternating:
      for (std::size_t t = 0; t < horizon; ++t) {
        for (std::size_t i = 0; i < n; ++i) rel[t * n + i] = (i + t) % 2 == 0 ? 1.0 : cfg.r_min;
      }
      break;
    case MarketKind::AdversarialFollowLeader: {
      const double eta = learning_rate(n, horizon, cfg.r_min);
      Portfolio w = Portfolio::uniform(n);
      std::vector<std::size_t> leaders;
      for (std::size_t t = 0; t < horizon; ++t) {
        const double top = kernels::max(w.weights());
        leaders.clear();
        for (std::size_t i = 0; i < n; ++i) {
          if (w[i] == top) leaders.push_back(i);
        }
        const std::size_t hit = leaders[rng.next_u64() % leaders.size()];
        double* out = rel.data() + t * n;
        std::fill(out, out + n, 1.0);
        out[hit] = cfg.r_min;
        w = eg_update(w, std::span<const double>(out, n), eta);
      }
      break;
    }
  }
  return PriceRelativeSeries(n, std::move(rel), cfg.r_min);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

PriceSeries parse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  // skip blank leading lines
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw Error(ErrorCode::EmptyFile, "no header row");
  for (auto f : split_fields(line)) names.emplace_back(f);

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != names.size()) {
      throw Error(ErrorCode::RaggedRows, "line " + std::to_string(line_no) + " has " +
                                             std::to_string(fields.size()) + " fields, header has " +
                                             std::to_string(names.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      double value = 0.0;
      const auto f = fields[c];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
        throw ParseError(line_no, c + 1, "cannot parse '" + std::string(f) + "' as a price");
      }
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyFile, "no price rows after header");
  return PriceSeries(std::move(names), std::move(rows));
}

PriceSeries load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  return parse_csv(in);
}

}  // namespace olps
