// NEON variants for AArch64, where Advanced SIMD is part of the baseline.

#include "dab/simd.hpp"

#ifdef DAB_SIMD_HAVE_NEON

#include <arm_neon.h>

#include <limits>

namespace dab::simd::neon {

void axpy(double a, const double* x, double* y, std::size_t n) noexcept {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t p = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), p));
  }
  for (; i < n; ++i) {
    y[i] += a * x[i];
  }
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
  }
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) {
    sum += x[i] * y[i];
  }
  return sum;
}

double min_value(const double* x, std::size_t n) noexcept {
  double best = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  if (n >= 2) {
    float64x2_t vmin = vdupq_n_f64(best);
    for (; i + 2 <= n; i += 2) {
      vmin = vminq_f64(vmin, vld1q_f64(x + i));
    }
    best = vminvq_f64(vmin);
  }
  for (; i < n; ++i) {
    best = x[i] < best ? x[i] : best;
  }
  return best;
}

}  // namespace dab::simd::neon

#endif  // DAB_SIMD_HAVE_NEON
