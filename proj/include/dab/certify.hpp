#pragma once

// Certification of dual solutions. A certificate describes the function
//
//   z(t) = z0 + sum_j w_j Omega_n(t r_j)
//
// and verify() proves z(t) >= 0 on [0, infinity) after adding the smallest
// inflation to z0 its bounds allow. The proof is exact up to double-precision
// rounding: sampled values are combined with the curvature bound
// |Omega_n''| <= 1/n, range bounds (Omega_n >= its global minimum,
// Omega_n >= 1 - s^2/(2n), |Omega_n(s)| <= E_n(s)) and adaptive bisection.
// No interval arithmetic or directed rounding is involved.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dab::certify {

struct Entry {
  double radius = 0.0;
  double coefficient = 0.0;
};

struct DualCertificate {
  int n = 2;
  double z0 = 0.0;
  std::vector<Entry> entries;
  /// Contribution of cut multipliers to the objective (sum of z_c).
  double objective_extra = 0.0;

  /// Adds the term z_k Omega_n(t d_k).
  void add_distance(double distance, double coefficient);

  /// Adds z_c sum_i Omega_n(t ||v_i||) for a simplex cut given by its
  /// squared vertex norms; z_c also enters the objective.
  void add_cut(std::span<const double> squared_norms, double coefficient);

  /// z0 + sum_j w_j - 1; the normalization requires this to be >= -1e-9.
  double normalization_slack() const;

  /// z0 + objective_extra: the bound the certificate claims before inflation.
  double objective() const { return z0 + objective_extra; }

  /// Throws DomainError unless n is in [2, 26], z0 and all coefficients are
  /// finite and all radii are finite and positive.
  void validate() const;
};

struct VerificationReport {
  /// Smallest sampled value of z on the grid of the certified range.
  double grid_min = 0.0;
  /// Gap between grid_min and the certified lower bound of z.
  double lipschitz_slack = 0.0;
  /// T' beyond which z >= 0 follows from the envelope bounds alone.
  double tail_threshold = 0.0;
  /// Surplus of the tail inequality at tail_threshold (>= 0 when it holds).
  double tail_margin = 0.0;
  /// Amount added to z0 to make the certified lower bound nonnegative.
  double inflation = 0.0;
  /// z0 + inflation + objective_extra.
  double certified_bound = 0.0;
  bool verified = false;
  /// Reason for verified == false; empty otherwise.
  std::string failure;
  /// Cells examined, including bisection children.
  std::size_t cells = 0;
};

struct VerifyOptions {
  double t_max = 20.0;
  double step = 0.0005;
  /// Tail refinement doubles T up to this multiple of t_max.
  double tail_limit_factor = 10.0;
  /// Required surplus in the tail inequality.
  double tail_epsilon = 1e-12;
  /// An entry is sampled (rather than range-bounded) on a cell when
  /// radius * cell width is at most this.
  double smooth_width = 0.05;
  /// Bisection stops at cells narrower than step * 2^-max_depth.
  int max_depth = 90;
  std::size_t node_budget = 4'000'000;
};

/// z(t) = z0 + sum_j w_j Omega_n(t r_j).
double constraint_value(const DualCertificate& cert, double t);

/// Bound on |z'(t)| over [0, T] from |Omega_n'(s)| <= s / n.
double lipschitz_constant(const DualCertificate& cert, double t_max);

/// Bound on |z''(t)| everywhere from |Omega_n''| <= 1 / n.
double curvature_constant(const DualCertificate& cert);

VerificationReport verify(const DualCertificate& cert, const VerifyOptions& options = {});

inline VerificationReport verify(const DualCertificate& cert, double t_max, double step) {
  VerifyOptions options;
  options.t_max = t_max;
  options.step = step;
  return verify(cert, options);
}

}  // namespace dab::certify
