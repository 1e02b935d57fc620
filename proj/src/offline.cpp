#include "olps/offline.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "olps/error.hpp"
#include "olps/kernels.hpp"

namespace olps {

namespace {

// Objective and gradient in one pass over the rows.
double evaluate(const PriceRelativeSeries& rel, std::span<const double> w,
                std::vector<double>& grad) {
  const std::size_t horizon = rel.horizon();
  std::fill(grad.begin(), grad.end(), 0.0);
  double total = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    const auto rho = rel.row(t);
    const double inner = kernels::dot(w, rho);
    total += std::log(inner);
    kernels::axpy(1.0 / inner, rho, grad);
  }
  const double scale = 1.0 / static_cast<double>(horizon);
  kernels::scale(scale, grad);
  return total * scale;
}

double residual(std::span<const double> w, std::span<const double> grad) {
  return kernels::max(grad) - kernels::dot(w, grad);
}

void exponentiated_step(std::span<const double> w, std::span<const double> grad, double step,
                        std::vector<double>& out) {
  const double top = kernels::max(grad);
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] * std::exp(step * (grad[i] - top));
  kernels::scale(1.0 / kernels::sum(out), out);
}

}  // namespace

double log_wealth_rate(const PriceRelativeSeries& rel, std::span<const double> w) {
  if (w.size() != rel.assets()) throw Error(ErrorCode::InvalidArgument, "portfolio size mismatch");
  double total = 0.0;
  for (std::size_t t = 0; t < rel.horizon(); ++t) total += std::log(kernels::dot(w, rel.row(t)));
  return total / static_cast<double>(rel.horizon());
}

OfflineSolution solve_offline(const PriceRelativeSeries& rel, double tol, std::size_t max_iter,
                              std::optional<Portfolio> start) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  const std::size_t n = rel.assets();
  std::vector<double> w = start ? std::vector<double>(start->weights().begin(), start->weights().end())
                                : std::vector<double>(n, 1.0 / static_cast<double>(n));
  if (w.size() != n) throw Error(ErrorCode::InvalidArgument, "start portfolio size mismatch");

  std::vector<double> grad(n);
  std::vector<double> trial(n);
  std::vector<double> trial_grad(n);
  double value = evaluate(rel, w, grad);
  double res = residual(w, grad);
  double step = 1.0;
  std::size_t iter = 0;
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-12;
  constexpr double kMaxStep = 1e8;

  while (res > tol && iter < max_iter) {
    ++iter;
    bool accepted = false;
    double trial_value = value;
    while (step >= kMinStep) {
      exponentiated_step(w, grad, step, trial);
      // Directional gain g . (w' - w); nonnegative for an ascent step.
      const double predicted = kernels::dot(grad, trial) - kernels::dot(grad, w);
      trial_value = evaluate(rel, trial, trial_grad);
      if (!std::isfinite(trial_value)) {
        throw Error(ErrorCode::InvalidArgument, "non-finite offline objective");
      }
      if (trial_value >= value + kArmijo * predicted && trial_value >= value) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no representable improvement left
    w.swap(trial);
    grad.swap(trial_grad);
    value = trial_value;
    res = residual(w, grad);
    step = std::min(step * 2.0, kMaxStep);
  }

  OfflineSolution out{Portfolio(w), value, iter, res};
  return out;
}

double naive_regret_bound(double r_min) {
  if (!(r_min > 0.0 && r_min <= 1.0)) throw Error(ErrorCode::InvalidArgument, "r_min in (0, 1]");
  return std::log(1.0 / r_min);
}

}  // namespace olps
