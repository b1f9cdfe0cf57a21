#pragma once

// Small dense linear programs: a handful of variables against up to ~1e5
// inequality rows, or the transpose of that. Solved by a two-phase revised
// simplex method on whichever of the program and its dual has fewer rows.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dab::lp {

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };
enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* status_name(Status status) noexcept;

/// Dense LP. Rows are stored contiguously, one coefficient per variable.
class LinearProgram {
 public:
  LinearProgram(Sense sense, std::vector<double> objective);

  /// Appends a row; throws std::invalid_argument on a length mismatch or a
  /// non-finite entry.
  void add_row(std::span<const double> coefficients, Relation relation, double rhs);

  /// Lower bound for a variable; std::nullopt makes it free. Variables
  /// default to free.
  void set_lower_bound(std::size_t variable, std::optional<double> bound);

  void reserve_rows(std::size_t rows);

  Sense sense() const noexcept { return sense_; }
  std::size_t num_variables() const noexcept { return objective_.size(); }
  std::size_t num_rows() const noexcept { return relations_.size(); }
  std::span<const double> objective() const noexcept { return objective_; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {coefficients_.data() + i * num_variables(), num_variables()};
  }
  Relation relation(std::size_t i) const noexcept { return relations_[i]; }
  double rhs(std::size_t i) const noexcept { return rhs_[i]; }
  const std::optional<double>& lower_bound(std::size_t j) const noexcept { return lower_[j]; }

 private:
  Sense sense_;
  std::vector<double> objective_;
  std::vector<double> coefficients_;
  std::vector<Relation> relations_;
  std::vector<double> rhs_;
  std::vector<std::optional<double>> lower_;
};

struct LpSolution {
  Status status = Status::kInfeasible;
  std::vector<double> values;
  double objective_value = 0.0;
  /// Multiplier per row (sign convention of a minimization: nonnegative on
  /// >= rows, nonpositive on <= rows). Empty unless optimal.
  std::vector<double> row_duals;
  std::size_t iterations = 0;
  /// True when the LP dual was the working problem.
  bool solved_dual = false;
};

/// Tolerances and limits. The defaults are the module configuration.
struct SolverOptions {
  double pivot_tolerance = 1e-10;
  double optimality_tolerance = 1e-11;
  double feasibility_tolerance = 1e-9;
  std::size_t refactor_interval = 64;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_limit = 50;
  std::size_t max_iterations = 200000;
};

/// Residual bound that every optimal solution honours on every row:
/// violation <= kResidualTolerance * (1 + |rhs|).
inline constexpr double kResidualTolerance = 1e-9;

/// Solves to optimality or reports infeasible / unbounded. Deterministic for
/// identical input and identical SIMD dispatch.
LpSolution solve(const LinearProgram& lp, const SolverOptions& options = {});

/// Largest row violation of `values`, relative to 1 + |rhs|.
double max_relative_violation(const LinearProgram& lp, std::span<const double> values);

namespace detail {

/// min c^T x subject to A x = b, x >= 0 with A stored row-major (m x n).
struct StandardForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;
};

struct StandardResult {
  Status status = Status::kInfeasible;
  std::vector<double> x;      // size cols
  std::vector<double> duals;  // size rows, simplex multipliers c_B^T B^{-1}
  std::size_t iterations = 0;
};

StandardResult solve_standard(const StandardForm& problem, const SolverOptions& options);

}  // namespace detail

}  // namespace dab::lp
