#pragma once

// Dense double-precision vector kernels used by the simplex pricing loop and
// by certificate sampling. Each kernel has a portable scalar reference and,
// where the build target allows it, an AVX2 (x86-64) or NEON (AArch64)
// variant. The variant is picked once at runtime from the CPU's features.
//
// axpy is bitwise identical across variants (no fused multiply-add); dot
// reassociates the sum and agrees with the scalar reference to rounding.

#include <cstddef>
#include <span>

namespace dab::simd {

enum class Isa { kScalar, kAvx2, kNeon };

const char* isa_name(Isa isa) noexcept;

/// Best variant supported by this CPU and this build.
Isa detected_isa() noexcept;

/// Variant the dispatching entry points currently use.
Isa active_isa() noexcept;

/// Overrides the dispatch choice. Requesting an unsupported variant falls
/// back to the scalar reference; returns the variant actually selected.
Isa select_isa(Isa isa) noexcept;

/// y += a * x. Spans must have equal length.
void axpy(double a, std::span<const double> x, std::span<double> y);

/// sum_i x_i y_i.
double dot(std::span<const double> x, std::span<const double> y);

/// Smallest element of x (+infinity for an empty span).
double min_value(std::span<const double> x);

namespace scalar {
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double min_value(const double* x, std::size_t n) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define DAB_SIMD_HAVE_AVX2 1
namespace avx2 {
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double min_value(const double* x, std::size_t n) noexcept;
}  // namespace avx2
#endif

#if defined(__aarch64__)
#define DAB_SIMD_HAVE_NEON 1
namespace neon {
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
double dot(const double* x, const double* y, std::size_t n) noexcept;
double min_value(const double* x, std::size_t n) noexcept;
}  // namespace neon
#endif

}  // namespace dab::simd
