#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "olps/error.hpp"

namespace olps {

/// Anything that yields independent uniform doubles on [0, 1).
template <class G>
concept UniformSource = requires(G& g) {
  { g.uniform() } -> std::convertible_to<double>;
};

/// Walker/Vose alias table: O(n) construction, O(1) draws.
///
/// Column k is chosen uniformly; it returns k with probability prob[k] and
/// alias[k] otherwise, so index i is drawn with probability
/// (prob[i] + sum_{k : alias[k] = i} (1 - prob[k])) / n.
class AliasTable {
 public:
  /// Input within this distance of summing to one is renormalized silently.
  static constexpr double kNormalizationTolerance = 1e-9;

  /// Throws NegativeEntry, ZeroVector, or InvalidArgument when the entries
  /// do not sum to one within kNormalizationTolerance.
  static AliasTable build(std::span<const double> p);

  /// Renormalizes any nonnegative, nonzero vector before building.
  static AliasTable build_unnormalized(std::span<const double> weights);

  std::size_t size() const noexcept { return prob_.size(); }
  std::span<const double> prob() const noexcept { return prob_; }
  std::span<const std::uint32_t> alias() const noexcept { return alias_; }

  /// The distribution the table encodes, reconstructed from prob/alias.
  std::vector<double> distribution() const;

  /// One draw; consumes exactly two uniforms.
  template <UniformSource G>
  std::size_t sample(G& rng) const {
    const double n = static_cast<double>(prob_.size());
    std::size_t column = static_cast<std::size_t>(rng.uniform() * n);
    if (column >= prob_.size()) column = prob_.size() - 1;
    return rng.uniform() < prob_[column] ? column : alias_[column];
  }

  /// s independent draws with replacement, in draw order. Throws InvalidS
  /// for s = 0.
  template <UniformSource G>
  std::vector<std::size_t> multi_sample(std::size_t s, G& rng) const {
    if (s == 0) throw Error(ErrorCode::InvalidS, "s must be >= 1");
    std::vector<std::size_t> out(s);
    for (auto& idx : out) idx = sample(rng);
    return out;
  }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace olps
