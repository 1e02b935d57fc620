#include "olps/sampler.hpp"

#include <cmath>
#include <string>

#include "olps/kernels.hpp"

namespace olps {

namespace {

// Scaled entries this close to one fill their column on their own.
constexpr double kFullColumnSlack = 1e-14;

}  // namespace

AliasTable AliasTable::build(std::span<const double> p) {
  if (p.empty()) throw Error(ErrorCode::ZeroVector, "empty probability vector");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::isnan(p[i]) || p[i] < 0.0) {
      throw Error(ErrorCode::NegativeEntry, "p[" + std::to_string(i) + "] = " + std::to_string(p[i]));
    }
  }
  const double total = kernels::sum(p);
  if (!(total > 0.0)) throw Error(ErrorCode::ZeroVector, "probability vector sums to zero");
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::InvalidArgument, "probabilities sum to " + std::to_string(total));
  }

  const std::size_t n = p.size();
  AliasTable table;
  table.prob_.assign(n, 1.0);
  table.alias_.resize(n);
  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  small.reserve(n);
  large.reserve(n);
  const double factor = static_cast<double>(n) / total;
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint32_t>(i);
    table.alias_[i] = idx;
    scaled[i] = p[i] * factor;
    if (std::abs(scaled[i] - 1.0) <= kFullColumnSlack) continue;
    (scaled[i] < 1.0 ? small : large).push_back(idx);
  }

  while (!small.empty() && !large.empty()) {
    const std::uint32_t lo = small.back();
    small.pop_back();
    const std::uint32_t hi = large.back();
    table.prob_[lo] = scaled[lo];
    table.alias_[lo] = hi;
    scaled[hi] -= 1.0 - scaled[lo];
    if (std::abs(scaled[hi] - 1.0) <= kFullColumnSlack) {
      large.pop_back();
    } else if (scaled[hi] < 1.0) {
      large.pop_back();
      small.push_back(hi);
    }
  }
  // Leftovers differ from one only by rounding.
  for (auto i : small) table.prob_[i] = 1.0;
  for (auto i : large) table.prob_[i] = 1.0;
  return table;
}

AliasTable AliasTable::build_unnormalized(std::span<const double> weights) {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (std::isnan(weights[i]) || weights[i] < 0.0) {
      throw Error(ErrorCode::NegativeEntry,
                  "w[" + std::to_string(i) + "] = " + std::to_string(weights[i]));
    }
  }
  const double total = kernels::sum(weights);
  if (!(total > 0.0)) throw Error(ErrorCode::ZeroVector, "weights sum to zero");
  std::vector<double> p(weights.begin(), weights.end());
  kernels::scale(1.0 / total, p);
  return build(p);
}

std::vector<double> AliasTable::distribution() const {
  const std::size_t n = prob_.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] += prob_[k];
    out[alias_[k]] += 1.0 - prob_[k];
  }
  for (auto& v : out) v /= static_cast<double>(n);
  return out;
}

}  // namespace olps
