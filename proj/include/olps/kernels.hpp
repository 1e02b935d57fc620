#pragma once

// Data-parallel inner loops shared by the update, estimator and offline code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is picked once at first use from the CPU feature bits;
// setting OLPS_KERNELS=scalar in the environment pins the reference path.
// Reductions in the SIMD path use a different summation order, so results
// agree with the reference to rounding, not bit-for-bit.

#include <cstddef>
#include <span>
#include <string_view>

namespace olps::kernels {

struct KernelSet {
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*max)(const double* x, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // x *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
};

const KernelSet& scalar_set() noexcept;

/// The AVX2 set, or nullptr when it was not compiled in or the CPU lacks
/// AVX2/FMA.
const KernelSet* avx2_set() noexcept;

/// The set used by the library.
const KernelSet& active() noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline double max(std::span<const double> x) { return active().max(x.data(), x.size()); }
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void scale(double alpha, std::span<double> x) { active().scale(alpha, x.data(), x.size()); }

}  // namespace olps::kernels
