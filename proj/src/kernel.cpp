#include "dab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dab/error.hpp"

namespace dab::kernel {

namespace {

constexpr double kSeriesLimit = 1.0;     // bessel_j: power series below this
constexpr double kForwardLimit = 25.0;   // bessel_j: expansion + recurrence above
constexpr double kOmegaSeriesLimit = 4.0;
constexpr double kZeroScanStep = 0.1;
constexpr double kZeroScanEnd = 200.0;

bool is_half_integer_order(double alpha) {
  const double twice = 2.0 * alpha;
  return std::isfinite(alpha) && twice == std::floor(twice);
}

void check_order(double alpha) {
  if (!is_half_integer_order(alpha) || alpha < 0.0 || alpha > kMaxOrder) {
    throw DomainError("Bessel order must be an integer or half-integer in [0, 13], got " +
                      std::to_string(alpha));
  }
}

void check_argument(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("Bessel argument must be finite and nonnegative, got " + std::to_string(t));
  }
}

void check_dimension(int n, int max_n) {
  if (n < 2 || n > max_n) {
    throw DomainError("dimension must lie in [2, " + std::to_string(max_n) + "], got " +
                      std::to_string(n));
  }
}

// (t/2)^alpha / Gamma(alpha + 1) times the normalized series.
double bessel_j_series(double alpha, double t) {
  const double lead = std::exp(alpha * std::log(0.5 * t) - std::lgamma(alpha + 1.0));
  return lead * detail::omega_series(alpha, t);
}

// Large-argument expansion of J_nu for nu in {0, 1}.
double hankel_j01(int nu, double t) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0;
  double q = 0.0;
  double a = 1.0;  // a_k(nu) / t^k
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      a *= (mu - odd * odd) / (8.0 * k * t);
    }
    const double magnitude = std::abs(a);
    if (magnitude > previous) {
      break;  // asymptotic series started to diverge
    }
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * a;
    } else {
      q += sign * a;
    }
    if (magnitude < 1e-18) {
      break;
    }
    previous = magnitude;
  }
  // chi = t - (nu/2 + 1/4) pi, expanded so sin/cos see the exact argument.
  const double s = std::sin(t);
  const double c = std::cos(t);
  const double r = std::numbers::sqrt2 / 2.0;
  double cos_chi;
  double sin_chi;
  if (nu == 0) {
    cos_chi = r * (c + s);
    sin_chi = r * (s - c);
  } else {
    cos_chi = r * (s - c);
    sin_chi = -r * (s + c);
  }
  return std::sqrt(2.0 / (std::numbers::pi * t)) * (p * cos_chi - q * sin_chi);
}

}  // namespace

namespace detail {

double omega_series(double alpha, double t) {
  const double x = -0.25 * t * t;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < 500; ++m) {
    term *= x / (m * (alpha + m));
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)) && m * (alpha + m) > -x) {
      break;
    }
  }
  return sum;
}

double bessel_j_backward(double alpha, double t) {
  const bool half = alpha != std::floor(alpha);
  const double base = half ? 0.5 : 0.0;
  const double reach = std::max(alpha, t);
  const int start = static_cast<int>(reach + 20.0 + 10.0 * std::sqrt(reach)) + 1;
  const int target = static_cast<int>(alpha - base + 0.5);

  // b_k stands for J_{base + k} up to a common factor.
  double upper = 0.0;
  double current = 1e-30;
  double at_target = 0.0;
  double even_sum = 0.0;  // integer orders: b_0 + 2 sum b_{2k}
  for (int k = start; k >= 0; --k) {
    if (k == target) {
      at_target = current;
    }
    if (!half && k % 2 == 0) {
      even_sum += (k == 0) ? current : 2.0 * current;
    }
    const double nu = base + k;
    const double next = (2.0 * nu / t) * current - upper;
    upper = current;
    current = next;
    if (std::abs(current) > 1e250) {
      constexpr double shrink = 1e-250;
      current *= shrink;
      upper *= shrink;
      at_target *= shrink;
      even_sum *= shrink;
    }
  }
  if (!half) {
    return at_target / even_sum;
  }
  // J_{1/2} = sqrt(2/(pi t)) sin t and J_{-1/2} = sqrt(2/(pi t)) cos t.
  const double amplitude = std::sqrt(2.0 / (std::numbers::pi * t));
  const double s = std::sin(t);
  const double c = std::cos(t);
  // After the loop upper holds J_{1/2} and current J_{-1/2}, both unscaled.
  const double scale =
      (std::abs(s) >= std::abs(c)) ? amplitude * s / upper : amplitude * c / current;
  return at_target * scale;
}

double bessel_j_forward(double alpha, double t) {
  const bool half = alpha != std::floor(alpha);
  double lower;
  double current;
  double nu;
  if (half) {
    const double amplitude = std::sqrt(2.0 / (std::numbers::pi * t));
    lower = amplitude * std::cos(t);    // J_{-1/2}
    current = amplitude * std::sin(t);  // J_{1/2}
    nu = 0.5;
  } else {
    lower = hankel_j01(0, t);
    current = hankel_j01(1, t);
    nu = 1.0;
    if (alpha == 0.0) {
      return lower;
    }
  }
  while (nu < alpha) {
    const double next = (2.0 * nu / t) * current - lower;
    lower = current;
    current = next;
    nu += 1.0;
  }
  return current;
}

}  // namespace detail

double bessel_j(double alpha, double t) {
  check_order(alpha);
  check_argument(t);
  if (t == 0.0) {
    return alpha == 0.0 ? 1.0 : 0.0;
  }
  if (t <= kSeriesLimit) {
    return bessel_j_series(alpha, t);
  }
  if (t < kForwardLimit) {
    return detail::bessel_j_backward(alpha, t);
  }
  return detail::bessel_j_forward(alpha, t);
}

OmegaKernel::OmegaKernel(int n)
    : n_(n), alpha_(0.5 * (n - 2)), prefactor_(0.0) {
  check_dimension(n, 28);
  prefactor_ = std::tgamma(alpha_ + 1.0);
}

double OmegaKernel::operator()(double t) const {
  check_argument(t);
  if (t == 0.0) {
    return 1.0;
  }
  if (t <= kOmegaSeriesLimit) {
    return detail::omega_series(alpha_, t);
  }
  if (n_ == 2) {
    return t < kForwardLimit ? detail::bessel_j_backward(0.0, t) : detail::bessel_j_forward(0.0, t);
  }
  if (n_ == 3) {
    return std::sin(t) / t;
  }
  const double j = t < kForwardLimit ? detail::bessel_j_backward(alpha_, t)
                                     : detail::bessel_j_forward(alpha_, t);
  return prefactor_ * std::pow(2.0 / t, alpha_) * j;
}

double OmegaKernel::derivative(double t) const {
  check_dimension(n_, 26);
  return -(t / n_) * OmegaKernel(n_ + 2)(t);
}

double omega(int n, double t) {
  return OmegaKernel(n)(t);
}

double omega_derivative(int n, double t) {
  return OmegaKernel(n).derivative(t);
}

BesselZero bessel_zero(double alpha, int k) {
  check_order(alpha);
  if (k < 1 || k > 20) {
    throw DomainError("Bessel zero index must lie in [1, 20], got " + std::to_string(k));
  }
  // J_alpha has no zeros in (0, alpha].
  double lo = alpha;
  double f_lo = bessel_j(alpha, lo);
  int found = 0;
  for (int step = 1;; ++step) {
    const double hi = alpha + step * kZeroScanStep;
    if (hi > kZeroScanEnd) {
      break;
    }
    const double f_hi = bessel_j(alpha, hi);
    if (f_hi == 0.0 || (f_lo < 0.0) != (f_hi < 0.0)) {
      if (++found == k) {
        if (f_hi == 0.0) {
          return {alpha, k, hi};
        }
        double a = lo;
        double b = hi;
        const bool lo_negative = f_lo < 0.0;
        for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * b;
             ++it) {
          const double mid = 0.5 * (a + b);
          const double f_mid = bessel_j(alpha, mid);
          if (f_mid == 0.0) {
            a = b = mid;
            break;
          }
          if ((f_mid < 0.0) == lo_negative) {
            a = mid;
          } else {
            b = mid;
          }
        }
        return {alpha, k, 0.5 * (a + b)};
      }
      if (f_hi == 0.0) {
        // Simple zero exactly on the scan grid: the sign flips past it.
        lo = hi;
        f_lo = -f_lo;
        continue;
      }
    }
    lo = hi;
    f_lo = f_hi;
  }
  throw SearchError("no bracket for zero " + std::to_string(k) + " of J_" + std::to_string(alpha) +
                    " below t = 200");
}

KernelMinimum omega_min(int n) {
  check_dimension(n, 26);
  const double t_star = bessel_zero(0.5 * n, 1).value;
  return {t_star, omega(n, t_star)};
}

double envelope(int n, double t) {
  check_dimension(n, 28);
  if (!(t > 0.0)) {
    throw DomainError("envelope needs t > 0, got " + std::to_string(t));
  }
  double bound;
  if (n == 2) {
    bound = std::sqrt(2.0 / (std::numbers::pi * t));
  } else if (n == 3) {
    bound = 1.0 / t;
  } else {
    const double alpha = 0.5 * (n - 2);
    bound = std::exp(std::lgamma(0.5 * n) + alpha * std::log(2.0 / t)) / std::numbers::sqrt2;
  }
  return std::min(1.0, bound);
}

double certified_abs_max(int n, double a, double b, double step) {
  check_dimension(n, 28);
  if (!(a >= 0.0) || !(b >= a) || !(step > 0.0)) {
    throw DomainError("certified_abs_max needs 0 <= a <= b and step > 0");
  }
  const OmegaKernel omega_n(n);
  const auto cells = static_cast<long long>(std::ceil((b - a) / step));
  if (cells == 0) {
    return std::abs(omega_n(a));
  }
  const double h = (b - a) / static_cast<double>(cells);
  const double curvature_slack = h * h / (8.0 * n);  // |Omega_n''| <= 1/n
  double previous = std::abs(omega_n(a));
  double result = previous;
  for (long long i = 1; i <= cells; ++i) {
    const double t = (i == cells) ? b : a + static_cast<double>(i) * h;
    const double value = std::abs(omega_n(t));
    result = std::max(result, std::max(previous, value) + curvature_slack);
    previous = value;
  }
  return result;
}

double refined_envelope(int n, double t, double horizon, double step) {
  const double plain = envelope(n, t);
  if (horizon <= t) {
    return plain;
  }
  const double refined = std::max(certified_abs_max(n, t, horizon, step), envelope(n, horizon));
  return std::min(plain, refined);
}

}  // namespace dab::kernel
