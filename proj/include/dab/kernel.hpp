#pragma once

// Radial kernel Omega_n(t) = Gamma(n/2) (2/t)^((n-2)/2) J_{(n-2)/2}(t), the
// average of cos(t <u, xi>) over unit vectors xi in R^n, together with the
// Bessel functions it is built from.
//
// Everything here is a pure function of its arguments and thread safe.

namespace dab::kernel {

/// Largest Bessel order accepted by bessel_j and bessel_zero.
inline constexpr double kMaxOrder = 13.0;

/// Arguments up to this value are covered by the 1e-12 accuracy contract.
inline constexpr double kAccurateArgument = 1.0e4;

/// Bessel function of the first kind J_alpha(t) for integer or half-integer
/// alpha in [0, 13] and t >= 0. Absolute error is below 1e-12 for
/// t <= 1e4; larger arguments are accepted but carry no accuracy promise.
/// Throws DomainError for other orders and for negative or non-finite t.
double bessel_j(double alpha, double t);

/// Dimension-indexed kernel. Construction fails for n < 2 or n > 28; the
/// derivative additionally needs n <= 26.
class OmegaKernel {
 public:
  explicit OmegaKernel(int n);

  int dimension() const noexcept { return n_; }
  /// Bessel order (n - 2) / 2.
  double order() const noexcept { return alpha_; }

  double operator()(double t) const;
  double derivative(double t) const;

 private:
  int n_;
  double alpha_;
  double prefactor_;  // Gamma(alpha + 1)
};

/// Omega_n(t); exactly 1 at t = 0. Throws DomainError for n < 2 or t < 0.
double omega(int n, double t);

/// d/dt Omega_n(t) = -(t / n) Omega_{n+2}(t).
double omega_derivative(int n, double t);

struct BesselZero {
  double order = 0.0;
  int index = 0;
  double value = 0.0;
};

/// k-th positive zero of J_alpha (k <= 20) by a step-0.1 sign scan starting
/// at t = alpha followed by bisection. Throws SearchError when no bracket is
/// found below t = 200.
BesselZero bessel_zero(double alpha, int k);

struct KernelMinimum {
  double t_star = 0.0;
  double value = 0.0;
};

/// Global minimum of Omega_n, attained at the first zero of J_{n/2}
/// (2 <= n <= 26).
KernelMinimum omega_min(int n);

/// Nonincreasing majorant E_n(t) of |Omega_n| on [t, infinity).
///   n = 2:  sqrt(2 / (pi t))
///   n = 3:  1 / t
///   n >= 4: Gamma(n/2) (2/t)^((n-2)/2) / sqrt(2)
/// capped at 1. Throws DomainError for t <= 0.
double envelope(int n, double t);

/// Certified upper bound on max |Omega_n| over [a, b], from samples spaced
/// at most `step` apart plus the curvature bound |Omega_n''| <= 1/n.
double certified_abs_max(int n, double a, double b, double step);

/// Envelope sharpened by one refinement step: certified sampling of
/// |Omega_n| on [t, horizon] combined with envelope(n, horizon) beyond it.
/// Still a nonincreasing majorant of |Omega_n| on [t, infinity).
double refined_envelope(int n, double t, double horizon, double step = 1.0e-3);

namespace detail {

/// Power series sum_{m} (-t^2/4)^m / (m! (alpha+1)_m), i.e. Omega with
/// alpha = (n-2)/2. Only used for small t.
double omega_series(double alpha, double t);

/// J_alpha through the backward (Miller) recurrence; 0 < t <= 40.
double bessel_j_backward(double alpha, double t);

/// J_alpha from the large-argument expansion of J_0, J_1 (integer orders) or
/// the closed-form spherical Bessel functions (half-integer orders) followed
/// by upward recurrence; t >= 20.
double bessel_j_forward(double alpha, double t);

}  // namespace detail

}  // namespace dab::kernel
