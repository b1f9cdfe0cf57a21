#pragma once

// Linear programs for distance-avoiding sets. For a dimension n, distances
// d_1 < ... < d_N and simplex cuts c, the dual program is
//
//   minimize  z_0 + sum_c z_c
//   subject to z_0 + sum_k z_k + (n+1) sum_c z_c >= 1
//              z_0 + sum_k z_k Omega_n(t d_k) + sum_c z_c sum_i Omega_n(t |v_i|) >= 0
//                  for every grid point t > 0,
//              z_c >= 0,
//
// and any feasible z whose constraint function stays nonnegative on all of
// [0, infinity) bounds the density of sets avoiding the distances.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dab/certify.hpp"
#include "dab/lp.hpp"

namespace dab::model {

struct Grid {
  double t_max = 20.0;
  double step = 0.0005;

  /// Number of cells; t_max / step must be an integer up to 1e6.
  std::size_t cells() const;
  double point(std::size_t i) const;
  void validate() const;
};

/// Grid scaled so that t_max * d_1 = 20 and step * d_1 = 0.0005.
Grid default_grid(double smallest_distance);

struct DistanceSet {
  std::vector<double> distances;

  DistanceSet() = default;
  DistanceSet(std::initializer_list<double> values) : distances(values) {}
  explicit DistanceSet(std::vector<double> values) : distances(std::move(values)) {}

  std::size_t size() const noexcept { return distances.size(); }
  double operator[](std::size_t i) const { return distances[i]; }
  /// Throws DomainError unless nonempty, finite, positive and strictly increasing.
  void validate() const;
};

/// n+1 points of R^n at pairwise distance `edge`, described by their squared
/// norms.
struct SimplexCut {
  std::vector<double> squared_norms;
  double edge = 1.0;
  /// Label of the multiplier z_c in reports.
  std::string label;

  /// Gram matrix of the vertices: a_i on the diagonal, (a_i + a_j - e^2) / 2 off it.
  std::vector<double> gram() const;
  /// Empty string when the cut is a valid simplex, else the reason.
  std::string defect() const;
  void validate(int n) const;
};

struct ProblemSpec {
  int n = 2;
  DistanceSet distances{1.0};
  std::vector<SimplexCut> cuts;
  Grid grid;

  void validate() const;
};

struct DualModel {
  lp::LinearProgram program;
  std::vector<std::string> warnings;
};

/// Variables (z_0, z_1..z_N, z_c...) in that order.
DualModel build_dual(const ProblemSpec& spec);

/// One variable alpha(t) >= 0 per grid point including t = 0. Cuts are
/// rejected with DomainError.
lp::LinearProgram build_primal(const ProblemSpec& spec);

/// Regular simplex with unit edges centred at the origin.
SimplexCut canonical_cut(int n);

/// Determinant of an m x m row-major matrix by LU with partial pivoting.
double determinant(const std::vector<double>& matrix, std::size_t m);

/// Smallest eigenvalue of a symmetric m x m row-major matrix.
double min_eigenvalue(const std::vector<double>& matrix, std::size_t m);

/// Both roots (low <= high) of det(Gram) = 0 in the unknown last squared norm
/// of a unit-edge simplex whose first n squared norms are known. Throws
/// NoCompletionError when the roots are complex.
std::pair<double, double> complete_simplex(int n, const std::vector<double>& known_squared_norms,
                                           double edge = 1.0);

struct ScoredCut {
  SimplexCut cut;
  /// Dual optimum with this cut added.
  double score = 0.0;
};

struct CutSearchOptions {
  double step = 0.1;
  int max_index = 40;
  std::size_t top_k = 3;
  std::size_t threads = 0;
};

/// Exhaustive search over known-norm tuples a_i = step * j_i (j_1 <= ... <= j_n
/// <= max_index), scaled by d_1^2. Each completion (both roots) that forms a
/// valid simplex is scored by the dual optimum with that single cut; the best
/// top_k are returned, lowest score first.
std::vector<ScoredCut> cut_search(int n, const DistanceSet& distances, const Grid& grid,
                                  const CutSearchOptions& options = {});

/// Every scored candidate of the search above, lowest score first.
std::vector<ScoredCut> score_cuts(int n, const DistanceSet& distances, const Grid& grid,
                                  const CutSearchOptions& options = {});

/// The lattice candidates of the search above (both roots, valid simplices
/// only), without scoring.
std::vector<SimplexCut> candidate_cuts(int n, const DistanceSet& distances,
                                      const CutSearchOptions& options = {});

/// True when every nonzero vertex radius r has r * t_max past the kernel
/// minimum, so the grid sees the negative part of each cut term.
bool resolved_by(const SimplexCut& cut, int n, const Grid& grid);

/// Solves the dual over `base` plus every grid-resolved cut of `pool` by
/// column generation, then returns `base` followed by at most `count` of the
/// cuts used at the optimum, thinned by backward elimination on the LP value.
std::vector<SimplexCut> combine_cuts(int n, const DistanceSet& distances, const Grid& grid,
                                     const std::vector<SimplexCut>& pool,
                                     std::vector<SimplexCut> base, std::size_t count,
                                     std::size_t threads = 0);

struct BoundResult {
  double upper_bound = 1.0;
  double lp_objective = 1.0;
  /// z_0, z_k per distance, z_c per cut as returned by the LP.
  std::vector<double> solution;
  certify::DualCertificate certificate;
  certify::VerificationReport report;
  ProblemSpec problem;
  std::vector<std::string> warnings;
};

/// Solves the dual, certifies the solution and reports the certified bound.
BoundResult solve_bound(const ProblemSpec& spec);

/// Omega_n(j) / (Omega_n(j) - 1) with j the location of the kernel minimum.
double analytic_one_distance(int n);

/// Smallest integer chi with chi * upper_bound >= 1. Throws DomainError for
/// a nonpositive bound and NoInformationError for a bound of 1 or more.
long long chromatic_lower_bound(double upper_bound);

/// 1 - 1 / Omega_n(j), the chromatic bound implied by analytic_one_distance.
double analytic_chromatic_bound(int n);

/// Frozen search results for n = 2 and n = 3 (three cuts each); empty for
/// other dimensions. The last squared norm is recomputed by complete_simplex.
std::vector<SimplexCut> published_cuts(int n);

/// Cuts used for the upper-bound table: published_cuts(n) plus the canonical
/// cut.
std::vector<SimplexCut> table_cuts(int n);

}  // namespace dab::model
