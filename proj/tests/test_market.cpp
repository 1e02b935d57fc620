#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "olps/error.hpp"
#include "olps/market.hpp"

namespace {

using olps::ErrorCode;
using olps::MarketKind;

olps::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const olps::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an olps::Error";
  return ErrorCode::InvalidArgument;
}

void expect_relative_invariants(const olps::PriceRelativeSeries& rel) {
  for (std::size_t t = 0; t < rel.horizon(); ++t) {
    const auto row = rel.row(t);
    EXPECT_NEAR(*std::max_element(row.begin(), row.end()), 1.0, 1e-12);
    for (double v : row) EXPECT_GE(v, rel.r_min());
  }
}

TEST(RelativesFromPrices, HalvedAssetGivesHalfRelative) {
  const olps::PriceSeries prices({"a", "b"}, {{1, 1}, {2, 1}});
  const auto rel = olps::relatives_from_prices(prices, olps::RMinPolicy::Reject);
  ASSERT_EQ(rel.horizon(), 1u);
  EXPECT_EQ(rel.row(0)[0], 1.0);
  EXPECT_EQ(rel.row(0)[1], 0.5);
  EXPECT_EQ(rel.r_min(), 0.5);
}

TEST(RelativesFromPrices, FlatMarketIsAllOnes) {
  const olps::PriceSeries prices({"a", "b"}, {{1, 1}, {1, 1}});
  const auto rel = olps::relatives_from_prices(prices, olps::RMinPolicy::Reject);
  EXPECT_EQ(rel.row(0)[0], 1.0);
  EXPECT_EQ(rel.row(0)[1], 1.0);
  EXPECT_EQ(rel.r_min(), 1.0);
}

TEST(RelativesFromPrices, ZeroPriceIsRejected) {
  EXPECT_EQ(code_of([] { olps::PriceSeries({"a", "b"}, {{1, 2}, {0, 1}}); }),
            ErrorCode::NonPositivePrice);
  EXPECT_EQ(code_of([] { olps::PriceSeries({"a"}, {{1}, {-3}}); }), ErrorCode::NonPositivePrice);
}

TEST(RelativesFromPrices, ClampRaisesEntriesToFloor) {
  const olps::PriceSeries prices({"a", "b", "c"}, {{1, 1, 1}, {1, 0.1, 0.8}, {1, 1, 1}});
  const auto rel = olps::relatives_from_prices(prices, olps::RMinPolicy::Clamp, 0.25);
  EXPECT_EQ(rel.r_min(), 0.25);
  EXPECT_EQ(rel.row(0)[1], 0.25);
  EXPECT_DOUBLE_EQ(rel.row(0)[2], 0.8);
  // day 2: asset b recovers tenfold and becomes the row max
  EXPECT_EQ(rel.row(1)[1], 1.0);
  EXPECT_DOUBLE_EQ(rel.row(1)[0], 0.25);  // 0.1 clamped
  expect_relative_invariants(rel);
}

TEST(RelativesFromPrices, RejectWithFloorFlagsViolation) {
  const olps::PriceSeries prices({"a", "b"}, {{1, 1}, {1, 0.1}});
  EXPECT_EQ(code_of([&] { olps::relatives_from_prices(prices, olps::RMinPolicy::Reject, 0.5); }),
            ErrorCode::RMinViolation);
}

TEST(RelativesFromPrices, ScaleInvarianceOfOneDay) {
  const std::vector<std::vector<double>> rows = {{3, 5, 7}, {4, 4, 9}, {2, 6, 8}, {5, 5, 5}};
  auto scaled = rows;
  for (auto& p : scaled[1]) p *= 17.5;
  const auto a = olps::relatives_from_prices(olps::PriceSeries({}, rows), olps::RMinPolicy::Reject);
  const auto b = olps::relatives_from_prices(olps::PriceSeries({}, scaled), olps::RMinPolicy::Reject);
  for (std::size_t t = 0; t < a.horizon(); ++t) {
    for (std::size_t i = 0; i < a.assets(); ++i) EXPECT_NEAR(a.row(t)[i], b.row(t)[i], 1e-15);
  }
}

TEST(GenerateMarket, TwoAssetAlternatingRows) {
  const auto rel = olps::generate_market({MarketKind::TwoAssetAlternating, 2, 2, 0.5, 0});
  EXPECT_EQ(rel.row(0)[0], 1.0);
  EXPECT_EQ(rel.row(0)[1], 0.5);
  EXPECT_EQ(rel.row(1)[0], 0.5);
  EXPECT_EQ(rel.row(1)[1], 1.0);
}

TEST(GenerateMarket, IsAPureFunctionOfConfig) {
  for (auto kind : {MarketKind::IidUniform, MarketKind::AdversarialFollowLeader}) {
    const olps::MarketGenConfig cfg{kind, 6, 40, 0.3, 1234};
    EXPECT_EQ(olps::generate_market(cfg), olps::generate_market(cfg));
  }
  olps::MarketGenConfig a{MarketKind::IidUniform, 6, 40, 0.3, 1};
  auto b = a;
  b.seed = 2;
  EXPECT_FALSE(olps::generate_market(a) == olps::generate_market(b));
}

TEST(GenerateMarket, InvariantsHoldOverManySeeds) {
  for (auto kind : {MarketKind::IidUniform, MarketKind::TwoAssetAlternating,
                    MarketKind::AdversarialFollowLeader}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const std::size_t n = 2 + seed % 7;
      const double r_min = 0.1 + 0.009 * static_cast<double>(seed);
      const auto rel = olps::generate_market({kind, n, 25, r_min, seed});
      ASSERT_EQ(rel.assets(), n);
      ASSERT_EQ(rel.horizon(), 25u);
      expect_relative_invariants(rel);
    }
  }
}

TEST(GenerateMarket, AdversaryHitsTheHeaviestAsset) {
  // From the uniform start every asset ties; afterwards the hit asset is
  // strictly lighter, so the adversary never hits the same one twice in a
  // row when n = 2.
  const auto rel = olps::generate_market({MarketKind::AdversarialFollowLeader, 2, 20, 0.5, 3});
  for (std::size_t t = 0; t < rel.horizon(); ++t) {
    const auto row = rel.row(t);
    EXPECT_EQ(std::count(row.begin(), row.end(), 0.5), 1);
    if (t > 0) EXPECT_NE(rel.row(t - 1)[0], row[0]);
  }
}

TEST(GenerateMarket, SingleAssetOnlyForIid) {
  EXPECT_EQ(code_of([] { olps::generate_market({MarketKind::TwoAssetAlternating, 1, 5, 0.5, 0}); }),
            ErrorCode::UnsupportedKind);
  const auto rel = olps::generate_market({MarketKind::IidUniform, 1, 5, 0.5, 0});
  EXPECT_EQ(rel.row(3)[0], 1.0);
}

TEST(Csv, WellFormedFile) {
  std::istringstream in("AAA,BBB\n1.5,2\n1.6,2.1\n1.7,1.9\n");
  const auto prices = olps::parse_csv(in);
  EXPECT_EQ(prices.days(), 3u);
  EXPECT_EQ(prices.assets(), 2u);
  EXPECT_EQ(prices.asset_names()[1], "BBB");
  EXPECT_DOUBLE_EQ(prices.day(2)[0], 1.7);
}

TEST(Csv, BadCellReportsRowAndColumn) {
  std::istringstream in("AAA,BBB\n1,2\n1,abc\n");
  try {
    olps::parse_csv(in);
    FAIL() << "expected ParseError";
  } catch (const olps::ParseError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_EQ(e.column(), 2u);
  }
}

TEST(Csv, RaggedAndEmpty) {
  std::istringstream ragged("a,b\n1,2\n1,2,3\n");
  EXPECT_EQ(code_of([&] { olps::parse_csv(ragged); }), ErrorCode::RaggedRows);
  std::istringstream empty("");
  EXPECT_EQ(code_of([&] { olps::parse_csv(empty); }), ErrorCode::EmptyFile);
  std::istringstream header_only("a,b\n");
  EXPECT_EQ(code_of([&] { olps::parse_csv(header_only); }), ErrorCode::EmptyFile);
}

TEST(Csv, LoadFromDisk) {
  const auto path = std::filesystem::temp_directory_path() / "olps_market_test.csv";
  {
    std::ofstream out(path);
    out << "x,y\r\n10,20\r\n11,19\r\n";
  }
  const auto prices = olps::load_csv(path);
  EXPECT_EQ(prices.days(), 2u);
  EXPECT_DOUBLE_EQ(prices.day(1)[1], 19.0);
  std::filesystem::remove(path);
}

}  // namespace
