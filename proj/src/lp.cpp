#include "dab/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "dab/error.hpp"
#include "dab/simd.hpp"

namespace dab::lp {

const char* status_name(Status status) noexcept {
  switch (status) {
    case Status::kOptimal:
      return "optimal";
    case Status::kInfeasible:
      return "infeasible";
    case Status::kUnbounded:
      return "unbounded";
    case Status::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

LinearProgram::LinearProgram(Sense sense, std::vector<double> objective)
    : sense_(sense), objective_(std::move(objective)), lower_(objective_.size()) {
  for (double c : objective_) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("objective coefficients must be finite");
    }
  }
}

void LinearProgram::add_row(std::span<const double> coefficients, Relation relation, double rhs) {
  if (coefficients.size() != num_variables()) {
    throw std::invalid_argument("row has " + std::to_string(coefficients.size()) +
                                " coefficients, expected " + std::to_string(num_variables()));
  }
  if (!std::isfinite(rhs) ||
      !std::all_of(coefficients.begin(), coefficients.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("row entries must be finite");
  }
  coefficients_.insert(coefficients_.end(), coefficients.begin(), coefficients.end());
  relations_.push_back(relation);
  rhs_.push_back(rhs);
}

void LinearProgram::set_lower_bound(std::size_t variable, std::optional<double> bound) {
  if (variable >= num_variables()) {
    throw std::out_of_range("no variable " + std::to_string(variable));
  }
  if (bound && !std::isfinite(*bound)) {
    throw std::invalid_argument("lower bounds must be finite");
  }
  lower_[variable] = bound;
}

void LinearProgram::reserve_rows(std::size_t rows) {
  coefficients_.reserve(rows * num_variables());
  relations_.reserve(rows);
  rhs_.reserve(rows);
}

double max_relative_violation(const LinearProgram& lp, std::span<const double> values) {
  double worst = 0.0;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const auto row = lp.row(i);
    double lhs = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      lhs += row[j] * values[j];
    }
    double violation = 0.0;
    switch (lp.relation(i)) {
      case Relation::kLessEqual:
        violation = lhs - lp.rhs(i);
        break;
      case Relation::kGreaterEqual:
        violation = lp.rhs(i) - lhs;
        break;
      case Relation::kEqual:
        violation = std::abs(lhs - lp.rhs(i));
        break;
    }
    worst = std::max(worst, violation / (1.0 + std::abs(lp.rhs(i))));
  }
  for (std::size_t j = 0; j < lp.num_variables(); ++j) {
    if (const auto& bound = lp.lower_bound(j)) {
      worst = std::max(worst, (*bound - values[j]) / (1.0 + std::abs(*bound)));
    }
  }
  return worst;
}

namespace detail {

namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Revised simplex with an explicit basis inverse, refactored periodically.
// Columns >= cols are artificial unit vectors, one per row.
class Simplex {
 public:
  Simplex(const StandardForm& problem, const SolverOptions& options)
      : m_(problem.rows), n_(problem.cols), options_(options), a_(problem.a), b_(problem.b) {
    row_sign_.assign(m_, 1.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (b_[i] < 0.0) {
        row_sign_[i] = -1.0;
        b_[i] = -b_[i];
        for (std::size_t j = 0; j < n_; ++j) {
          a_[i * n_ + j] = -a_[i * n_ + j];
        }
      }
    }
    basic_.assign(n_ + m_, false);
    basis_.resize(m_);
    initial_basis();
    refactor();
  }

  StandardResult run(std::span<const double> cost) {
    StandardResult result;
    // Phase 1: drive the artificial variables to zero.
    if (has_artificial_basis()) {
      std::vector<double> phase1(n_ + m_, 0.0);
      std::fill(phase1.begin() + static_cast<std::ptrdiff_t>(n_), phase1.end(), 1.0);
      const Status status = iterate(phase1);
      if (status == Status::kIterationLimit) {
        result.status = status;
        result.iterations = iterations_;
        return result;
      }
      double infeasibility = 0.0;
      double scale = 1.0;
      for (std::size_t i = 0; i < m_; ++i) {
        scale = std::max(scale, b_[i]);
        if (basis_[i] >= n_) {
          infeasibility += std::max(0.0, x_basic_[i]);
        }
      }
      if (infeasibility > options_.feasibility_tolerance * scale) {
        result.status = Status::kInfeasible;
        result.iterations = iterations_;
        return result;
      }
      evict_artificials();
    }

    std::vector<double> phase2(n_ + m_, 0.0);
    std::copy(cost.begin(), cost.end(), phase2.begin());
    result.status = iterate(phase2);
    result.iterations = iterations_;
    if (result.status != Status::kOptimal) {
      return result;
    }
    result.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) {
        result.x[basis_[i]] = std::max(0.0, x_basic_[i]);
      }
    }
    result.duals = multipliers(phase2);
    for (std::size_t i = 0; i < m_; ++i) {
      result.duals[i] *= row_sign_[i];
    }
    return result;
  }

 private:
  double column_entry(std::size_t row, std::size_t col) const {
    if (col >= n_) {
      return (col - n_ == row) ? 1.0 : 0.0;
    }
    return a_[row * n_ + col];
  }

  // Unit columns (+1 in one row, zero elsewhere) serve as the starting basis
  // for their row; remaining rows get an artificial.
  void initial_basis() {
    std::vector<std::size_t> unit_for_row(m_, n_ + m_);
    for (std::size_t j = 0; j < n_; ++j) {
      std::size_t nonzeros = 0;
      std::size_t row = 0;
      for (std::size_t i = 0; i < m_ && nonzeros < 2; ++i) {
        if (a_[i * n_ + j] != 0.0) {
          ++nonzeros;
          row = i;
        }
      }
      if (nonzeros == 1 && a_[row * n_ + j] == 1.0 && unit_for_row[row] == n_ + m_) {
        unit_for_row[row] = j;
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = unit_for_row[i] < n_ + m_ ? unit_for_row[i] : n_ + i;
      basic_[basis_[i]] = true;
    }
  }

  bool has_artificial_basis() const {
    return std::any_of(basis_.begin(), basis_.end(), [this](std::size_t v) { return v >= n_; });
  }

  void refactor() {
    Matrix basis_matrix(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t k = 0; k < m_; ++k) {
        basis_matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
            column_entry(i, basis_[k]);
      }
    }
    Eigen::PartialPivLU<Matrix> lu(basis_matrix);
    inverse_ = lu.inverse();
    if (!inverse_.allFinite()) {
      throw InternalError("simplex basis became singular");
    }
    x_basic_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double sum = 0.0;
      for (std::size_t k = 0; k < m_; ++k) {
        sum += inverse_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * b_[k];
      }
      x_basic_[i] = sum;
    }
    since_refactor_ = 0;
  }

  std::vector<double> multipliers(std::span<const double> cost) const {
    std::vector<double> pi(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) {
        continue;
      }
      for (std::size_t k = 0; k < m_; ++k) {
        pi[k] += cb * inverse_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      }
    }
    return pi;
  }

  // Reduced costs of the structural columns: d = c - A^T pi.
  void price(std::span<const double> cost, std::span<const double> pi) {
    reduced_.assign(cost.begin(), cost.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t i = 0; i < m_; ++i) {
      if (pi[i] != 0.0) {
        simd::axpy(-pi[i], std::span<const double>(a_.data() + i * n_, n_), reduced_);
      }
    }
  }

  std::vector<double> basis_solve_column(std::size_t col) const {
    std::vector<double> u(m_, 0.0);
    for (std::size_t k = 0; k < m_; ++k) {
      const double entry = column_entry(k, col);
      if (entry == 0.0) {
        continue;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        u[i] += inverse_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) * entry;
      }
    }
    return u;
  }

  void pivot(std::size_t leave_row, std::size_t enter, const std::vector<double>& u) {
    const double pivot_value = u[leave_row];
    const double theta = std::max(0.0, x_basic_[leave_row]) / pivot_value;
    for (std::size_t i = 0; i < m_; ++i) {
      x_basic_[i] -= theta * u[i];
    }
    x_basic_[leave_row] = theta;

    const auto r = static_cast<Eigen::Index>(leave_row);
    inverse_.row(r) /= pivot_value;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != leave_row && u[i] != 0.0) {
        inverse_.row(static_cast<Eigen::Index>(i)) -= u[i] * inverse_.row(r);
      }
    }
    basic_[basis_[leave_row]] = false;
    basis_[leave_row] = enter;
    basic_[enter] = true;
    ++since_refactor_;
  }

  Status iterate(std::span<const double> cost) {
    bool bland = false;
    std::size_t degenerate_run = 0;
    for (;;) {
      if (iterations_ >= options_.max_iterations) {
        return Status::kIterationLimit;
      }
      if (since_refactor_ >= options_.refactor_interval) {
        refactor();
      }
      const std::vector<double> pi = multipliers(cost);
      price(cost, pi);

      std::size_t enter = n_;
      double best = -options_.optimality_tolerance;
      for (std::size_t j = 0; j < n_; ++j) {
        if (basic_[j] || reduced_[j] >= -options_.optimality_tolerance) {
          continue;
        }
        if (bland) {
          enter = j;
          break;
        }
        if (reduced_[j] < best) {
          best = reduced_[j];
          enter = j;
        }
      }
      if (enter == n_) {
        if (since_refactor_ > 0) {
          refactor();  // confirm optimality on a fresh factorization
          continue;
        }
        return Status::kOptimal;
      }

      const std::vector<double> u = basis_solve_column(enter);
      std::size_t leave = m_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (u[i] <= options_.pivot_tolerance) {
          continue;
        }
        const double ratio = std::max(0.0, x_basic_[i]) / u[i];
        if (leave == m_ || ratio < best_ratio - 1e-14) {
          leave = i;
          best_ratio = ratio;
          continue;
        }
        if (ratio <= best_ratio + 1e-14) {
          // Ties: artificials leave first, then Bland's lowest index or the
          // numerically largest pivot.
          const bool art_i = basis_[i] >= n_;
          const bool art_l = basis_[leave] >= n_;
          bool take;
          if (art_i != art_l) {
            take = art_i;
          } else if (bland) {
            take = basis_[i] < basis_[leave];
          } else {
            take = u[i] > u[leave];
          }
          if (take) {
            leave = i;
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leave == m_) {
        return Status::kUnbounded;
      }
      if (best_ratio <= 1e-12) {
        if (++degenerate_run > options_.degenerate_limit) {
          bland = true;
        }
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(leave, enter, u);
      ++iterations_;
    }
  }

  // After phase 1, swap zero-valued artificials for structural columns where
  // possible. Artificials left over sit on redundant rows and stay at zero.
  void evict_artificials() {
    std::vector<double> row_of_binv_a(n_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) {
        continue;
      }
      std::fill(row_of_binv_a.begin(), row_of_binv_a.end(), 0.0);
      for (std::size_t k = 0; k < m_; ++k) {
        const double w = inverse_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
        if (w != 0.0) {
          simd::axpy(w, std::span<const double>(a_.data() + k * n_, n_), row_of_binv_a);
        }
      }
      std::size_t enter = n_;
      double best = options_.pivot_tolerance;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!basic_[j] && std::abs(row_of_binv_a[j]) > best) {
          best = std::abs(row_of_binv_a[j]);
          enter = j;
        }
      }
      if (enter == n_) {
        continue;
      }
      const std::vector<double> u = basis_solve_column(enter);
      // Degenerate pivot: the artificial is (numerically) zero.
      x_basic_[r] = 0.0;
      pivot(r, enter, u);
    }
    refactor();
  }

  std::size_t m_;
  std::size_t n_;
  SolverOptions options_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> row_sign_;
  std::vector<std::size_t> basis_;
  std::vector<bool> basic_;
  Matrix inverse_;
  std::vector<double> x_basic_;
  std::vector<double> reduced_;
  std::size_t since_refactor_ = 0;
  std::size_t iterations_ = 0;
};

}  // namespace

StandardResult solve_standard(const StandardForm& problem, const SolverOptions& options) {
  if (problem.a.size() != problem.rows * problem.cols || problem.b.size() != problem.rows ||
      problem.c.size() != problem.cols) {
    throw std::invalid_argument("inconsistent standard-form dimensions");
  }
  if (problem.rows == 0) {
    StandardResult result;
    const bool bounded = std::all_of(problem.c.begin(), problem.c.end(),
                                     [](double c) { return c >= 0.0; });
    result.status = bounded ? Status::kOptimal : Status::kUnbounded;
    result.x.assign(problem.cols, 0.0);
    return result;
  }
  Simplex simplex(problem, options);
  return simplex.run(problem.c);
}

}  // namespace detail

namespace {

// Program rewritten as: min c^T x + constant, rows a_i x >= b_i or = b_i
// scaled to unit infinity norm, x_j >= 0 for j in `nonnegative`.
struct Canonical {
  std::size_t vars = 0;
  std::vector<double> c;
  double constant = 0.0;
  std::vector<double> shift;  // lower bound per variable (0 for free ones)
  std::vector<bool> nonnegative;
  std::vector<double> a;  // kept rows, row-major
  std::vector<double> b;
  std::vector<bool> equality;
  std::vector<std::size_t> origin;  // original row index of each kept row
  std::vector<double> dual_factor;  // original multiplier = canonical * factor
  bool trivially_infeasible = false;
};

Canonical canonicalize(const LinearProgram& lp, const SolverOptions& options) {
  Canonical out;
  out.vars = lp.num_variables();
  const double direction = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
  out.c.resize(out.vars);
  out.shift.assign(out.vars, 0.0);
  out.nonnegative.assign(out.vars, false);
  for (std::size_t j = 0; j < out.vars; ++j) {
    out.c[j] = direction * lp.objective()[j];
    if (const auto& bound = lp.lower_bound(j)) {
      out.shift[j] = *bound;
      out.nonnegative[j] = true;
      out.constant += out.c[j] * *bound;
    }
  }
  std::vector<double> scratch(out.vars);
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    const auto row = lp.row(i);
    double rhs = lp.rhs(i);
    double norm = 0.0;
    for (std::size_t j = 0; j < out.vars; ++j) {
      rhs -= row[j] * out.shift[j];
      norm = std::max(norm, std::abs(row[j]));
    }
    const double sign = lp.relation(i) == Relation::kLessEqual ? -1.0 : 1.0;
    const bool equality = lp.relation(i) == Relation::kEqual;
    if (norm == 0.0) {
      const double lhs_minus_rhs = -sign * rhs;  // 0 - rhs in canonical sign
      const bool ok = equality ? std::abs(rhs) <= options.feasibility_tolerance
                               : lhs_minus_rhs >= -options.feasibility_tolerance;
      out.trivially_infeasible = out.trivially_infeasible || !ok;
      continue;
    }
    for (std::size_t j = 0; j < out.vars; ++j) {
      scratch[j] = sign * row[j] / norm;
    }
    out.a.insert(out.a.end(), scratch.begin(), scratch.end());
    out.b.push_back(sign * rhs / norm);
    out.equality.push_back(equality);
    out.origin.push_back(i);
    out.dual_factor.push_back(sign / norm);
  }
  return out;
}

LpSolution finish(const LinearProgram& lp, const Canonical& canon, std::vector<double> x_shifted,
                  const std::vector<double>& canonical_duals) {
  LpSolution solution;
  solution.status = Status::kOptimal;
  solution.values.resize(canon.vars);
  double objective = 0.0;
  for (std::size_t j = 0; j < canon.vars; ++j) {
    solution.values[j] = x_shifted[j] + canon.shift[j];
    objective += lp.objective()[j] * solution.values[j];
  }
  solution.objective_value = objective;
  solution.row_duals.assign(lp.num_rows(), 0.0);
  for (std::size_t k = 0; k < canon.origin.size(); ++k) {
    solution.row_duals[canon.origin[k]] = canonical_duals[k] * canon.dual_factor[k];
  }
  return solution;
}

LpSolution solve_direct(const LinearProgram& lp, const Canonical& canon,
                        const SolverOptions& options) {
  const std::size_t rows = canon.b.size();
  // Columns: one per nonnegative variable, two per free variable, one
  // surplus per inequality row.
  std::vector<std::size_t> first_col(canon.vars);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < canon.vars; ++j) {
    first_col[j] = cols;
    cols += canon.nonnegative[j] ? 1 : 2;
  }
  const std::size_t structural = cols;
  for (std::size_t i = 0; i < rows; ++i) {
    cols += canon.equality[i] ? 0 : 1;
  }

  detail::StandardForm sf;
  sf.rows = rows;
  sf.cols = cols;
  sf.a.assign(rows * cols, 0.0);
  sf.b = canon.b;
  sf.c.assign(cols, 0.0);
  for (std::size_t j = 0; j < canon.vars; ++j) {
    sf.c[first_col[j]] = canon.c[j];
    if (!canon.nonnegative[j]) {
      sf.c[first_col[j] + 1] = -canon.c[j];
    }
  }
  std::size_t surplus = structural;
  for (std::size_t i = 0; i < rows; ++i) {
    double* out = sf.a.data() + i * cols;
    for (std::size_t j = 0; j < canon.vars; ++j) {
      const double v = canon.a[i * canon.vars + j];
      out[first_col[j]] = v;
      if (!canon.nonnegative[j]) {
        out[first_col[j] + 1] = -v;
      }
    }
    if (!canon.equality[i]) {
      out[surplus++] = -1.0;
    }
  }

  const auto core = detail::solve_standard(sf, options);
  LpSolution solution;
  if (core.status == Status::kOptimal) {
    std::vector<double> x(canon.vars);
    for (std::size_t j = 0; j < canon.vars; ++j) {
      x[j] = core.x[first_col[j]] - (canon.nonnegative[j] ? 0.0 : core.x[first_col[j] + 1]);
    }
    solution = finish(lp, canon, std::move(x), core.duals);
  } else {
    solution.status = core.status;
  }
  solution.iterations = core.iterations;
  return solution;
}

// The LP dual of the canonical program, in standard form:
//   min -b^T y  s.t.  sum_i a_ij y_i (+ s_j) = c_j,  y_i >= 0 on inequality
//   rows (split into y+ - y- on equalities), slack s_j for x_j >= 0.
// Primal values are the negated simplex multipliers.
detail::StandardForm dual_standard_form(const Canonical& canon, std::span<const double> cost,
                                        std::vector<std::size_t>& first_col) {
  const std::size_t rows = canon.b.size();
  first_col.resize(rows);
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    first_col[i] = cols;
    cols += canon.equality[i] ? 2 : 1;
  }
  const std::size_t structural = cols;
  for (std::size_t j = 0; j < canon.vars; ++j) {
    cols += canon.nonnegative[j] ? 1 : 0;
  }
  detail::StandardForm sf;
  sf.rows = canon.vars;
  sf.cols = cols;
  sf.a.assign(sf.rows * cols, 0.0);
  sf.b.assign(cost.begin(), cost.end());
  sf.c.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    sf.c[first_col[i]] = -canon.b[i];
    if (canon.equality[i]) {
      sf.c[first_col[i] + 1] = canon.b[i];
    }
  }
  for (std::size_t j = 0; j < canon.vars; ++j) {
    double* out = sf.a.data() + j * cols;
    for (std::size_t i = 0; i < rows; ++i) {
      const double v = canon.a[i * canon.vars + j];
      out[first_col[i]] = v;
      if (canon.equality[i]) {
        out[first_col[i] + 1] = -v;
      }
    }
  }
  std::size_t slack = structural;
  for (std::size_t j = 0; j < canon.vars; ++j) {
    if (canon.nonnegative[j]) {
      sf.a[j * cols + slack++] = 1.0;
    }
  }
  return sf;
}

LpSolution solve_via_dual(const LinearProgram& lp, const Canonical& canon,
                          const SolverOptions& options) {
  std::vector<std::size_t> first_col;
  const auto sf = dual_standard_form(canon, canon.c, first_col);
  const auto core = detail::solve_standard(sf, options);

  LpSolution solution;
  solution.solved_dual = true;
  if (core.status == Status::kOptimal) {
    std::vector<double> x(canon.vars);
    for (std::size_t j = 0; j < canon.vars; ++j) {
      x[j] = -core.duals[j];
      if (canon.nonnegative[j]) {
        x[j] = std::max(0.0, x[j]);
      }
    }
    std::vector<double> y(canon.b.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = core.x[first_col[i]] - (canon.equality[i] ? core.x[first_col[i] + 1] : 0.0);
    }
    solution = finish(lp, canon, std::move(x), y);
    solution.solved_dual = true;
  } else if (core.status == Status::kUnbounded) {
    solution.status = Status::kInfeasible;
  } else if (core.status == Status::kInfeasible) {
    // Dual infeasible: the program is unbounded if it is feasible at all.
    // With a zero objective the dual is feasible (y = 0) and is unbounded
    // exactly when the program is infeasible.
    const std::vector<double> zero(canon.vars, 0.0);
    const auto feasibility = detail::solve_standard(dual_standard_form(canon, zero, first_col),
                                                    options);
    solution.status =
        feasibility.status == Status::kOptimal ? Status::kUnbounded : Status::kInfeasible;
  } else {
    solution.status = core.status;
  }
  solution.iterations = core.iterations;
  return solution;
}

}  // namespace

LpSolution solve(const LinearProgram& lp, const SolverOptions& options) {
  const Canonical canon = canonicalize(lp, options);
  if (canon.trivially_infeasible) {
    LpSolution solution;
    solution.status = Status::kInfeasible;
    return solution;
  }
  if (canon.b.size() > canon.vars) {
    return solve_via_dual(lp, canon, options);
  }
  return solve_direct(lp, canon, options);
}

}  // namespace dab::lp
