#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace olps {

/// Nonnegative weights summing to one (no short selling).
class Portfolio {
 public:
  static constexpr double kSumTolerance = 1e-9;

  /// Throws InvalidArgument unless entries are >= 0 and sum to 1 within
  /// kSumTolerance.
  explicit Portfolio(std::vector<double> weights);

  static Portfolio uniform(std::size_t n);
  static Portfolio unit(std::size_t n, std::size_t index);

  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> weights_;
};

/// Accumulated exponents l_i = eta * sum_t rho_i^(t) / I^(t); the portfolio
/// is softmax(l). Starts at all zeros, i.e. the uniform portfolio.
struct LogWeights {
  std::vector<double> exponents;
  double eta = 0.0;

  static LogWeights empty(std::size_t n, double eta) { return {std::vector<double>(n, 0.0), eta}; }

  /// exponents_i += eta * rho_i / i_tilde. Throws NonPositiveITilde.
  void push(std::span<const double> rho, double i_tilde);
};

/// Step size and error levels for one horizon, all derived from (n, T, r_min).
struct UpdateParams {
  double eta = 0.0;
  double eps_i = 0.0;
  double eps_z = 0.0;
  double delta = 0.05;
  double r_min = 1.0;

  /// eta = 2 r_min sqrt(2 ln n / T), eps_I = 3 eta / (4 r_min),
  /// eps_Z = eta^2 / r_min^2.
  static UpdateParams derive(std::size_t n, std::size_t horizon, double r_min, double delta);
  static UpdateParams from_eta(double eta, double r_min, double delta);
};

/// 2 r_min sqrt(2 ln n / T) with the natural log. Zero for n = 1.
double learning_rate(std::size_t n, std::size_t horizon, double r_min);

/// w_i exp(eta rho_i / (w . rho)) normalized to the simplex.
Portfolio eg_update(const Portfolio& w, std::span<const double> rho, double eta);

/// Z = sum_j w_j exp(eta rho_j / i_tilde).
double eeg_normalizer(std::span<const double> w, std::span<const double> rho, double eta,
                      double i_tilde);

/// w_i exp(eta rho_i / i_tilde) / z_tilde, with z_tilde = Z when not
/// supplied. A supplied normalizer is used as-is, so the result sums to
/// Z / z_tilde rather than one. Throws NonPositiveITilde, NonPositiveZTilde.
std::vector<double> eeg_update(std::span<const double> w, std::span<const double> rho,
                               double eta, double i_tilde,
                               std::optional<double> z_tilde = std::nullopt);

LogWeights log_history_push(LogWeights lw, std::span<const double> rho, double i_tilde);

/// Max-shifted softmax of the exponents.
Portfolio portfolio_from_log(const LogWeights& lw);

}  // namespace olps
