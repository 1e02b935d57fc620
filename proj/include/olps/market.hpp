#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace olps {

/// Closing prices for days 0..T (rows) of n assets (columns), row-major.
class PriceSeries {
 public:
  /// Throws NonPositivePrice for any entry <= 0 (or non-finite) and
  /// InvalidArgument when fewer than two days or no assets are given.
  PriceSeries(std::vector<std::string> asset_names, std::vector<std::vector<double>> rows);

  std::size_t days() const noexcept { return days_; }
  std::size_t assets() const noexcept { return assets_; }
  const std::vector<std::string>& asset_names() const noexcept { return names_; }
  std::span<const double> day(std::size_t d) const {
    return {prices_.data() + d * assets_, assets_};
  }

 private:
  std::vector<std::string> names_;
  std::size_t days_ = 0;
  std::size_t assets_ = 0;
  std::vector<double> prices_;
};

/// Price relatives rho^(t), t = 1..T, stored as T rows of n entries. Every
/// row has maximum exactly 1 and every entry lies in [r_min, 1].
class PriceRelativeSeries {
 public:
  static constexpr double kRowMaxTolerance = 1e-12;

  /// Validates the invariants; throws InvalidArgument / RMinViolation.
  PriceRelativeSeries(std::size_t assets, std::vector<double> relatives, double r_min);

  std::size_t assets() const noexcept { return assets_; }
  std::size_t horizon() const noexcept { return horizon_; }
  double r_min() const noexcept { return r_min_; }

  /// Row for day t, zero-based (t = 0 is rho^(1)).
  std::span<const double> row(std::size_t t) const {
    return {relatives_.data() + t * assets_, assets_};
  }
  std::span<const double> data() const noexcept { return relatives_; }

  /// Same rows, columns reordered so that new column j is old column perm[j].
  PriceRelativeSeries permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const PriceRelativeSeries&, const PriceRelativeSeries&) = default;

 private:
  std::size_t assets_;
  std::size_t horizon_;
  std::vector<double> relatives_;
  double r_min_;
};

enum class RMinPolicy {
  /// r_min is the smallest observed relative. A positive floor, when given,
  /// must not be violated by the data.
  Reject,
  /// Entries below the floor are raised to it and r_min is the floor.
  Clamp,
};

PriceRelativeSeries relatives_from_prices(const PriceSeries& prices, RMinPolicy policy,
                                          double r_min_floor = 0.0);

enum class MarketKind { IidUniform, TwoAssetAlternating, AdversarialFollowLeader };

std::string to_string(MarketKind kind);
MarketKind market_kind_from_string(const std::string& name);

struct MarketGenConfig {
  MarketKind kind = MarketKind::IidUniform;
  std::size_t assets = 2;
  std::size_t horizon = 1;
  double r_min = 0.5;
  std::uint64_t seed = 0;
};

/// Deterministic synthetic market for the given configuration.
///
/// - IidUniform: entries uniform on [r_min, 1], each row divided by its max.
/// - TwoAssetAlternating: even-indexed assets earn 1 and odd-indexed earn
///   r_min on odd days, swapped on even days; for n = 2 the rows alternate
///   (1, r_min), (r_min, 1).
/// - AdversarialFollowLeader: runs an exponentiated-gradient follower with
///   the default learning rate and hits its heaviest asset with r_min each
///   day, all others earning 1. Ties among heaviest assets are broken by the
///   seeded stream.
PriceRelativeSeries generate_market(const MarketGenConfig& cfg);

PriceSeries load_csv(const std::filesystem::path& path);
PriceSeries parse_csv(std::istream& in);

}  // namespace olps
