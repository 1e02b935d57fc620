#include "olps/updates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "olps/error.hpp"
#include "olps/kernels.hpp"

namespace olps {

Portfolio::Portfolio(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::InvalidArgument, "empty portfolio");
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidArgument, "portfolio weight " + std::to_string(w));
    }
  }
  const double total = kernels::sum(weights_);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::InvalidArgument, "portfolio sums to " + std::to_string(total));
  }
}

Portfolio Portfolio::uniform(std::size_t n) {
  return Portfolio(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Portfolio Portfolio::unit(std::size_t n, std::size_t index) {
  std::vector<double> w(n, 0.0);
  w.at(index) = 1.0;
  return Portfolio(std::move(w));
}

void LogWeights::push(std::span<const double> rho, double i_tilde) {
  if (!(i_tilde > 0.0)) {
    throw Error(ErrorCode::NonPositiveITilde, "I~ = " + std::to_string(i_tilde));
  }
  kernels::axpy(eta / i_tilde, rho, exponents);
}

UpdateParams UpdateParams::derive(std::size_t n, std::size_t horizon, double r_min,
                                  double delta) {
  return from_eta(learning_rate(n, horizon, r_min), r_min, delta);
}

UpdateParams UpdateParams::from_eta(double eta, double r_min, double delta) {
  UpdateParams p;
  p.eta = eta;
  p.r_min = r_min;
  p.delta = delta;
  p.eps_i = 3.0 * eta / (4.0 * r_min);
  p.eps_z = eta * eta / (r_min * r_min);
  return p;
}

double learning_rate(std::size_t n, std::size_t horizon, double r_min) {
  if (n == 0 || horizon == 0) throw Error(ErrorCode::InvalidArgument, "n and T must be >= 1");
  if (!(r_min > 0.0 && r_min <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "r_min must lie in (0, 1]");
  }
  return 2.0 * r_min *
         std::sqrt(2.0 * std::log(static_cast<double>(n)) / static_cast<double>(horizon));
}

namespace {

void check_shapes(std::span<const double> w, std::span<const double> rho) {
  if (w.size() != rho.size()) {
    throw Error(ErrorCode::InvalidArgument, "weight and price-relative lengths differ");
  }
}

void check_i_tilde(double i_tilde) {
  if (!(i_tilde > 0.0) || !std::isfinite(i_tilde)) {
    throw Error(ErrorCode::NonPositiveITilde, "I~ = " + std::to_string(i_tilde));
  }
}

// out_i = w_i exp(eta rho_i / i - shift), returns the sum
double exp_weights(std::span<const double> w, std::span<const double> rho, double eta,
                   double i_tilde, double shift, std::vector<double>& out) {
  out.resize(w.size());
  const double rate = eta / i_tilde;
  for (std::size_t k = 0; k < w.size(); ++k) out[k] = w[k] * std::exp(rate * rho[k] - shift);
  return kernels::sum(out);
}

std::vector<double> normalized_exp_weights(std::span<const double> w,
                                           std::span<const double> rho, double eta,
                                           double i_tilde) {
  // Shifting every exponent by the same amount cancels in the ratio.
  const double shift = eta / i_tilde * kernels::max(rho);
  std::vector<double> out;
  const double z = exp_weights(w, rho, eta, i_tilde, shift, out);
  kernels::scale(1.0 / z, out);
  return out;
}

}  // namespace

Portfolio eg_update(const Portfolio& w, std::span<const double> rho, double eta) {
  check_shapes(w.weights(), rho);
  const double inner = kernels::dot(w.weights(), rho);
  if (!(inner > 0.0)) throw Error(ErrorCode::InvalidArgument, "w . rho must be positive");
  return Portfolio(normalized_exp_weights(w.weights(), rho, eta, inner));
}

double eeg_normalizer(std::span<const double> w, std::span<const double> rho, double eta,
                      double i_tilde) {
  check_shapes(w, rho);
  check_i_tilde(i_tilde);
  std::vector<double> scratch;
  return exp_weights(w, rho, eta, i_tilde, 0.0, scratch);
}

std::vector<double> eeg_update(std::span<const double> w, std::span<const double> rho,
                               double eta, double i_tilde, std::optional<double> z_tilde) {
  check_shapes(w, rho);
  check_i_tilde(i_tilde);
  if (!z_tilde) return normalized_exp_weights(w, rho, eta, i_tilde);
  if (!(*z_tilde > 0.0) || !std::isfinite(*z_tilde)) {
    throw Error(ErrorCode::NonPositiveZTilde, "Z~ = " + std::to_string(*z_tilde));
  }
  std::vector<double> out;
  exp_weights(w, rho, eta, i_tilde, 0.0, out);
  kernels::scale(1.0 / *z_tilde, out);
  return out;
}

LogWeights log_history_push(LogWeights lw, std::span<const double> rho, double i_tilde) {
  if (rho.size() != lw.exponents.size()) {
    throw Error(ErrorCode::InvalidArgument, "price-relative length differs from history");
  }
  lw.push(rho, i_tilde);
  return lw;
}

Portfolio portfolio_from_log(const LogWeights& lw) {
  const double top = kernels::max(lw.exponents);
  std::vector<double> w(lw.exponents.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(lw.exponents[i] - top);
  kernels::scale(1.0 / kernels::sum(w), w);
  return Portfolio(std::move(w));
}

}  // namespace olps
