#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "olps/error.hpp"
#include "olps/random.hpp"
#include "olps/sampler.hpp"

namespace {

using olps::AliasTable;

// Probability of each outcome obtained by walking the two-draw partition:
// the first draw picks column k with mass 1/n, the second splits it into
// prob[k] (k itself) and 1 - prob[k] (alias[k]). Independent of
// AliasTable::distribution().
std::vector<double> enumerate_partition(const AliasTable& table) {
  const std::size_t n = table.size();
  std::vector<double> out(n, 0.0);
  const double column_mass = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] += column_mass * table.prob()[k];
    out[table.alias()[k]] += column_mass * (1.0 - table.prob()[k]);
  }
  return out;
}

double total_variation(const std::vector<double>& a, std::span<const double> b) {
  double tv = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
  return 0.5 * tv;
}

std::vector<double> frequencies(const AliasTable& table, std::size_t draws, std::uint64_t seed) {
  olps::RandomStream rng(seed);
  std::vector<double> f(table.size(), 0.0);
  for (std::size_t k = 0; k < draws; ++k) f[table.sample(rng)] += 1.0;
  for (auto& x : f) x /= static_cast<double>(draws);
  return f;
}

TEST(AliasTable, PointMassAlwaysReturnsItsIndex) {
  const auto table = AliasTable::build(std::vector<double>{1, 0, 0});
  olps::RandomStream rng(1);
  for (int k = 0; k < 1000; ++k) EXPECT_EQ(table.sample(rng), 0u);
  const auto five = table.multi_sample(5, rng);
  EXPECT_EQ(five, std::vector<std::size_t>(5, 0));
}

TEST(AliasTable, ReconstructsInput) {
  const std::vector<double> p{0.5, 0.25, 0.25};
  const auto table = AliasTable::build(p);
  const auto recon = table.distribution();
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(recon[i], p[i], 1e-12);
  EXPECT_LE(total_variation(enumerate_partition(table), p), 1e-12);
}

TEST(AliasTable, UniformNeedsNoAlias) {
  const auto table = AliasTable::build(std::vector<double>(7, 1.0 / 7.0));
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(table.prob()[i], 1.0);
    EXPECT_EQ(table.alias()[i], i);
  }
}

TEST(AliasTable, InputErrors) {
  auto code = [](std::vector<double> p) {
    try {
      AliasTable::build(p);
    } catch (const olps::Error& e) {
      return e.code();
    }
    return olps::ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code({0.5, -0.1, 0.6}), olps::ErrorCode::NegativeEntry);
  EXPECT_EQ(code({0.0, 0.0}), olps::ErrorCode::ZeroVector);
  EXPECT_EQ(code({}), olps::ErrorCode::ZeroVector);
  EXPECT_EQ(code({0.5, 0.6}), olps::ErrorCode::InvalidArgument);
  // within the silent renormalization band
  EXPECT_NO_THROW(AliasTable::build(std::vector<double>{0.5 + 4e-10, 0.5}));
}

TEST(AliasTable, MultiSampleRejectsZero) {
  const auto table = AliasTable::build(std::vector<double>{0.5, 0.5});
  olps::RandomStream rng(3);
  EXPECT_THROW(table.multi_sample(0, rng), olps::Error);
}

TEST(AliasTable, FairCoinWithinThreeSigma) {
  const auto table = AliasTable::build(std::vector<double>{0.5, 0.5});
  const auto f = frequencies(table, 1'000'000, 42);
  EXPECT_GE(f[0], 0.4985);
  EXPECT_LE(f[0], 0.5015);
}

TEST(AliasTable, BiasedCoinWithinThreeSigma) {
  const auto table = AliasTable::build(std::vector<double>{0.9, 0.1});
  const auto f = frequencies(table, 1'000'000, 43);
  EXPECT_NEAR(f[0], 0.9, 3.0 * std::sqrt(0.9 * 0.1 / 1e6));
}

TEST(AliasTable, MultiSampleUniformFourWithinThreeSigma) {
  const auto table = AliasTable::build(std::vector<double>(4, 0.25));
  olps::RandomStream rng(44);
  const auto draws = table.multi_sample(1'000'000, rng);
  std::vector<double> f(4, 0.0);
  for (auto i : draws) f[i] += 1e-6;
  for (double x : f) EXPECT_NEAR(x, 0.25, 3.0 * std::sqrt(0.25 * 0.75 / 1e6));
}

TEST(AliasTable, SameSeedSameSequence) {
  const auto table = AliasTable::build(std::vector<double>{0.1, 0.2, 0.3, 0.4});
  olps::RandomStream a(9);
  olps::RandomStream b(9);
  EXPECT_EQ(table.multi_sample(500, a), table.multi_sample(500, b));
}

TEST(AliasTable, ExactOnRandomVectorsProperty) {
  olps::RandomStream rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.next_u64() % 40;
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& x : p) {
      // sprinkle exact zeros
      x = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
      total += x;
    }
    if (total == 0.0) p[0] = total = 1.0;
    for (auto& x : p) x /= total;
    const auto table = AliasTable::build(p);
    EXPECT_LE(total_variation(enumerate_partition(table), p), 1e-12) << "n=" << n;
  }
}

TEST(AliasTable, UnnormalizedBuild) {
  const auto table = AliasTable::build_unnormalized(std::vector<double>{2.0, 6.0});
  const auto d = table.distribution();
  EXPECT_NEAR(d[0], 0.25, 1e-15);
  EXPECT_NEAR(d[1], 0.75, 1e-15);
}

}  // namespace
