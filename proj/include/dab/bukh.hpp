#pragma once

// Widely spaced distance sets. If consecutive distances grow by more than a
// ratio r(N), the constraint function
//
//   z(t) = 2^-N + sum_i 2^-(N-i+1) Omega_n(t d_i)
//
// stays nonnegative, so the density of a set avoiding all N distances is at
// most 2^-N. The ratio is t1 / t0 where Omega_n > 1 - eps on [0, t0] and
// |Omega_n| < eps on [t1, infinity), eps = 1 / (N 2^(N+1)).

#include "dab/certify.hpp"
#include "dab/model.hpp"

namespace dab::bukh {

struct SpacingResult {
  int N = 1;
  int n = 2;
  double epsilon = 0.25;
  double t0 = 0.0;
  double t1 = 0.0;
  double ratio = 1.0;
};

/// 1 / (N 2^(N+1)).
double epsilon(int N);

/// Largest t0 on a 1e-4 grid (1e-6 if that grid is too coarse) with
/// Omega_n > 1 - eps certified on [0, t0]. Throws SearchError when even the
/// fine grid has no such point.
double find_t0(int n, double eps);

/// Smallest t1 (to relative precision 1e-9) with envelope(n, t1) < eps,
/// found by doubling and bisection. Always exceeds find_t0(n, eps).
double find_t1(int n, double eps);

SpacingResult spacing_ratio(int n, int N);

/// Certificate z0 = 2^-N, z_i = 2^-(N-i+1). Throws SpacingError naming the
/// first i with d_{i+1} / d_i <= spacing_ratio(n, N).ratio.
certify::DualCertificate bukh_certificate(int n, const model::DistanceSet& distances);

/// d_i = d1 * ratio^(i-1), i = 1..N.
model::DistanceSet geometric_distances(int N, double ratio, double d1 = 1.0);

}  // namespace dab::bukh
