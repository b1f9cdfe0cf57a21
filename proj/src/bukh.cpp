#include "dab/bukh.hpp"

#include <cmath>
#include <string>

#include "dab/error.hpp"
#include "dab/kernel.hpp"

namespace dab::bukh {

namespace {

void check_eps(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw DomainError("eps must lie in (0, 1)");
  }
}

// Largest multiple of `step` up to which Omega_n > 1 - eps is certified, or 0.
// On a cell [a, b] the minimum is at least the mean of the endpoint values
// minus (b / n) (b - a) / 2, since |Omega_n'(t)| <= t / n.
double scan_t0(const kernel::OmegaKernel& omega, double eps, double step) {
  const double level = 1.0 - eps;
  const int n = omega.dimension();
  double a = 0.0;
  double fa = 1.0;
  for (long long k = 1;; ++k) {
    const double b = static_cast<double>(k) * step;
    const double fb = omega(b);
    const double lower = 0.5 * (fa + fb) - 0.5 * (b / n) * step;
    if (!(lower > level)) {
      return a;
    }
    a = b;
    fa = fb;
  }
}

}  // namespace

double epsilon(int N) {
  if (N < 1 || N > 60) {
    throw DomainError("N must lie in [1, 60], got " + std::to_string(N));
  }
  return std::ldexp(1.0 / N, -(N + 1));
}

double find_t0(int n, double eps) {
  check_eps(eps);
  const kernel::OmegaKernel omega(n);
  for (double step : {1e-4, 1e-6}) {
    const double t0 = scan_t0(omega, eps, step);
    if (t0 > 0.0) {
      return t0;
    }
  }
  throw SearchError("eps = " + std::to_string(eps) + " is below the resolution of the t0 grid");
}

double find_t1(int n, double eps) {
  check_eps(eps);
  double hi = 1.0;
  while (!(kernel::envelope(n, hi) < eps)) {
    hi *= 2.0;
  }
  double lo = 0.5 * hi;
  while (kernel::envelope(n, lo) < eps && lo > 1e-300) {
    hi = lo;
    lo *= 0.5;
  }
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (kernel::envelope(n, mid) < eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double t0 = find_t0(n, eps);
  return hi > t0 ? hi : std::nextafter(t0, 2.0 * t0);
}

SpacingResult spacing_ratio(int n, int N) {
  SpacingResult result;
  result.N = N;
  result.n = n;
  result.epsilon = epsilon(N);
  result.t0 = find_t0(n, result.epsilon);
  result.t1 = find_t1(n, result.epsilon);
  result.ratio = result.t1 / result.t0;
  return result;
}

certify::DualCertificate bukh_certificate(int n, const model::DistanceSet& distances) {
  distances.validate();
  const int N = static_cast<int>(distances.size());
  const double ratio = spacing_ratio(n, N).ratio;
  for (std::size_t i = 0; i + 1 < distances.size(); ++i) {
    if (!(distances[i + 1] / distances[i] > ratio)) {
      throw SpacingError("d[" + std::to_string(i + 1) + "] / d[" + std::to_string(i) +
                             "] does not exceed the spacing ratio " + std::to_string(ratio),
                         i);
    }
  }
  certify::DualCertificate cert;
  cert.n = n;
  cert.z0 = std::ldexp(1.0, -N);
  for (int i = 1; i <= N; ++i) {
    cert.add_distance(distances[i - 1], std::ldexp(1.0, -(N - i + 1)));
  }
  return cert;
}

model::DistanceSet geometric_distances(int N, double ratio, double d1) {
  if (N < 1 || !(ratio > 0.0) || !(d1 > 0.0)) {
    throw DomainError("geometric_distances needs N >= 1 and positive ratio and d1");
  }
  std::vector<double> d(N);
  for (int i = 0; i < N; ++i) {
    d[i] = d1 * std::pow(ratio, i);
  }
  return model::DistanceSet(std::move(d));
}

}  // namespace dab::bukh
