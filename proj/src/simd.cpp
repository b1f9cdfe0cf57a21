#include "dab/simd.hpp"

#include <atomic>
#include <cassert>
#include <limits>

namespace dab::simd {

namespace scalar {

void axpy(double a, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += a * x[i];
  }
}

double dot(const double* x, const double* y, std::size_t n) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += x[i] * y[i];
  }
  return sum;
}

double min_value(const double* x, std::size_t n) noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    best = x[i] < best ? x[i] : best;
  }
  return best;
}

}  // namespace scalar

namespace {

struct Table {
  void (*axpy)(double, const double*, double*, std::size_t) noexcept;
  double (*dot)(const double*, const double*, std::size_t) noexcept;
  double (*min_value)(const double*, std::size_t) noexcept;
};

constexpr Table kScalar{scalar::axpy, scalar::dot, scalar::min_value};
#ifdef DAB_SIMD_HAVE_AVX2
constexpr Table kAvx2{avx2::axpy, avx2::dot, avx2::min_value};
#endif
#ifdef DAB_SIMD_HAVE_NEON
constexpr Table kNeon{neon::axpy, neon::dot, neon::min_value};
#endif

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#ifdef DAB_SIMD_HAVE_AVX2
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::kNeon:
#ifdef DAB_SIMD_HAVE_NEON
      return true;
#else
      return false;
#endif
  }
  return false;
}

const Table& table_for(Isa isa) noexcept {
  switch (isa) {
#ifdef DAB_SIMD_HAVE_AVX2
    case Isa::kAvx2:
      return kAvx2;
#endif
#ifdef DAB_SIMD_HAVE_NEON
    case Isa::kNeon:
      return kNeon;
#endif
    default:
      return kScalar;
  }
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

Isa detected_isa() noexcept {
  if (supported(Isa::kAvx2)) {
    return Isa::kAvx2;
  }
  if (supported(Isa::kNeon)) {
    return Isa::kNeon;
  }
  return Isa::kScalar;
}

Isa active_isa() noexcept {
  return active().load(std::memory_order_relaxed);
}

Isa select_isa(Isa isa) noexcept {
  const Isa chosen = supported(isa) ? isa : Isa::kScalar;
  active().store(chosen, std::memory_order_relaxed);
  return chosen;
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  table_for(active_isa()).axpy(a, x.data(), y.data(), x.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return table_for(active_isa()).dot(x.data(), y.data(), x.size());
}

double min_value(std::span<const double> x) {
  return table_for(active_isa()).min_value(x.data(), x.size());
}

}  // namespace dab::simd
