#include "dab/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>

#include "dab/error.hpp"
#include "dab/kernel.hpp"
#include "dab/parallel.hpp"

namespace dab::model {

namespace {

constexpr std::size_t kMaxCells = 1'000'000;
constexpr double kDeterminantLimit = 1e-6;
constexpr double kEigenvalueSlack = 1e-9;

void check_dimension(int n) {
  if (n < 2 || n > 26) {
    throw DomainError("dimension must lie in [2, 26], got " + std::to_string(n));
  }
}

// Omega_n(t * radius) at every grid point, t = 0 included.
std::vector<double> kernel_column(const kernel::OmegaKernel& omega, const Grid& grid,
                                  double radius) {
  const std::size_t cells = grid.cells();
  std::vector<double> column(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    column[i] = omega(grid.point(i) * radius);
  }
  return column;
}

// Column of a cut: sum over its vertices of Omega_n(t |v_i|). Vertices of
// equal norm share one evaluation.
std::vector<double> cut_column(const kernel::OmegaKernel& omega, const Grid& grid,
                               const SimplexCut& cut) {
  std::vector<double> norms = cut.squared_norms;
  std::sort(norms.begin(), norms.end());
  std::vector<double> column(grid.cells() + 1, 0.0);
  for (std::size_t i = 0; i < norms.size();) {
    std::size_t j = i;
    while (j < norms.size() && norms[j] == norms[i]) {
      ++j;
    }
    const auto multiplicity = static_cast<double>(j - i);
    const auto part = kernel_column(omega, grid, std::sqrt(norms[i]));
    for (std::size_t k = 0; k < column.size(); ++k) {
      column[k] += multiplicity * part[k];
    }
    i = j;
  }
  return column;
}

// Dual LP from precomputed columns (each of length cells + 1).
lp::LinearProgram assemble_dual(int n, const std::vector<const std::vector<double>*>& distance_columns,
                                const std::vector<const std::vector<double>*>& cut_columns) {
  const std::size_t num_d = distance_columns.size();
  const std::size_t num_c = cut_columns.size();
  const std::size_t vars = 1 + num_d + num_c;
  std::vector<double> objective(vars, 0.0);
  objective[0] = 1.0;
  for (std::size_t c = 0; c < num_c; ++c) {
    objective[1 + num_d + c] = 1.0;
  }
  lp::LinearProgram program(lp::Sense::kMinimize, std::move(objective));
  for (std::size_t c = 0; c < num_c; ++c) {
    program.set_lower_bound(1 + num_d + c, 0.0);
  }
  const std::size_t points =
      num_d > 0 ? distance_columns[0]->size() : (num_c > 0 ? cut_columns[0]->size() : 1);
  program.reserve_rows(points);

  std::vector<double> row(vars);
  row[0] = 1.0;
  for (std::size_t k = 0; k < num_d; ++k) {
    row[1 + k] = 1.0;
  }
  for (std::size_t c = 0; c < num_c; ++c) {
    row[1 + num_d + c] = n + 1.0;
  }
  program.add_row(row, lp::Relation::kGreaterEqual, 1.0);

  for (std::size_t i = 1; i < points; ++i) {
    for (std::size_t k = 0; k < num_d; ++k) {
      row[1 + k] = (*distance_columns[k])[i];
    }
    for (std::size_t c = 0; c < num_c; ++c) {
      row[1 + num_d + c] = (*cut_columns[c])[i];
    }
    program.add_row(row, lp::Relation::kGreaterEqual, 0.0);
  }
  return program;
}

std::vector<double> gram_matrix(const std::vector<double>& norms, double edge_squared) {
  const std::size_t m = norms.size();
  std::vector<double> gram(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      gram[i * m + j] = (i == j) ? norms[i] : 0.5 * (norms[i] + norms[j] - edge_squared);
    }
  }
  return gram;
}

std::string format_tuple(const std::vector<double>& values) {
  std::string text = "(";
  char buffer[32];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buffer, sizeof buffer, "%.6f", values[i]);
    text += (i ? "," : "");
    text += buffer;
  }
  return text + ")";
}

// Nondecreasing index tuples of length n over [0, max_index], lexicographic.
std::vector<std::vector<int>> lattice_tuples(int n, int max_index) {
  std::vector<std::vector<int>> tuples;
  std::vector<int> current(n, 0);
  for (;;) {
    tuples.push_back(current);
    int pos = n - 1;
    while (pos >= 0 && current[pos] == max_index) {
      --pos;
    }
    if (pos < 0) {
      return tuples;
    }
    ++current[pos];
    for (int q = pos + 1; q < n; ++q) {
      current[q] = current[pos];
    }
  }
}

void check_search_options(const CutSearchOptions& options) {
  if (!(options.step > 0.0) || options.max_index < 0) {
    throw DomainError("cut search needs a positive lattice step and a nonnegative max index");
  }
}

}  // namespace

std::size_t Grid::cells() const {
  validate();
  return static_cast<std::size_t>(std::llround(t_max / step));
}

double Grid::point(std::size_t i) const {
  const auto count = static_cast<std::size_t>(std::llround(t_max / step));
  return i == count ? t_max : static_cast<double>(i) * step;
}

void Grid::validate() const {
  if (!(t_max > 0.0) || !(step > 0.0) || !std::isfinite(t_max) || !std::isfinite(step)) {
    throw DomainError("grid needs positive finite t_max and step");
  }
  const double ratio = t_max / step;
  const double count = std::round(ratio);
  if (count < 1.0 || std::abs(ratio - count) > 1e-9 * ratio) {
    throw DomainError("grid t_max must be an integer multiple of the step");
  }
  if (count > static_cast<double>(kMaxCells)) {
    throw DomainError("grid has more than 1e6 cells");
  }
}

Grid default_grid(double smallest_distance) {
  if (!(smallest_distance > 0.0) || !std::isfinite(smallest_distance)) {
    throw DomainError("distances must be positive");
  }
  return {20.0 / smallest_distance, 0.0005 / smallest_distance};
}

void DistanceSet::validate() const {
  if (distances.empty()) {
    throw DomainError("distance set is empty");
  }
  for (std::size_t i = 0; i < distances.size(); ++i) {
    const double d = distances[i];
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw DomainError("distances must be positive and finite");
    }
    if (i > 0 && !(d > distances[i - 1])) {
      throw DomainError("distances must be strictly increasing");
    }
  }
}

std::vector<double> SimplexCut::gram() const {
  return gram_matrix(squared_norms, edge * edge);
}

std::string SimplexCut::defect() const {
  if (!(edge > 0.0) || !std::isfinite(edge)) {
    return "edge length must be positive";
  }
  for (double a : squared_norms) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      return "squared norms must be finite and nonnegative";
    }
  }
  // Checks run on the unit-edge version of the simplex.
  const double e2 = edge * edge;
  std::vector<double> unit(squared_norms.size());
  std::transform(squared_norms.begin(), squared_norms.end(), unit.begin(),
                 [e2](double a) { return a / e2; });
  const std::size_t m = unit.size();
  const auto g = gram_matrix(unit, 1.0);
  double largest = 0.0;
  for (double v : g) {
    largest = std::max(largest, std::abs(v));
  }
  if (min_eigenvalue(g, m) < -kEigenvalueSlack * (1.0 + largest)) {
    return "Gram matrix of " + format_tuple(squared_norms) + " is not positive semidefinite";
  }
  const double det = determinant(g, m);
  if (std::abs(det) > kDeterminantLimit) {
    return "Gram determinant of " + format_tuple(squared_norms) + " is " + std::to_string(det) +
           ", vertices do not fit in the dimension";
  }
  return {};
}

void SimplexCut::validate(int n) const {
  if (squared_norms.size() != static_cast<std::size_t>(n) + 1) {
    throw DomainError("a simplex cut in dimension " + std::to_string(n) + " needs " +
                      std::to_string(n + 1) + " squared norms");
  }
  const auto reason = defect();
  if (!reason.empty()) {
    throw DomainError("invalid simplex cut: " + reason);
  }
}

void ProblemSpec::validate() const {
  check_dimension(n);
  distances.validate();
  grid.validate();
  for (const auto& cut : cuts) {
    cut.validate(n);
  }
}

DualModel build_dual(const ProblemSpec& spec) {
  spec.validate();
  const kernel::OmegaKernel omega(spec.n);
  std::vector<std::vector<double>> columns;
  columns.reserve(spec.distances.size() + spec.cuts.size());
  for (double d : spec.distances.distances) {
    columns.push_back(kernel_column(omega, spec.grid, d));
  }
  for (const auto& cut : spec.cuts) {
    columns.push_back(cut_column(omega, spec.grid, cut));
  }
  std::vector<const std::vector<double>*> distance_columns;
  std::vector<const std::vector<double>*> cut_columns;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    (k < spec.distances.size() ? distance_columns : cut_columns).push_back(&columns[k]);
  }

  DualModel model{assemble_dual(spec.n, distance_columns, cut_columns), {}};
  const double reach = spec.grid.t_max * spec.distances[0];
  const double t_star = kernel::omega_min(spec.n).t_star;
  if (reach < t_star) {
    model.warnings.push_back("grid ends at t*d_1 = " + std::to_string(reach) +
                             " before the kernel minimum at " + std::to_string(t_star));
  } else if (reach < 2.0 * t_star) {
    model.warnings.push_back("grid covers little beyond the first kernel oscillation");
  }
  if (spec.grid.step * spec.distances.distances.back() > 0.1) {
    model.warnings.push_back("grid step is coarse relative to the largest distance");
  }
  return model;
}

lp::LinearProgram build_primal(const ProblemSpec& spec) {
  spec.validate();
  if (!spec.cuts.empty()) {
    throw DomainError("the primal program has no simplex cuts");
  }
  const kernel::OmegaKernel omega(spec.n);
  const std::size_t points = spec.grid.cells() + 1;
  std::vector<double> objective(points, 0.0);
  objective[0] = 1.0;
  lp::LinearProgram program(lp::Sense::kMaximize, std::move(objective));
  for (std::size_t i = 0; i < points; ++i) {
    program.set_lower_bound(i, 0.0);
  }
  program.add_row(std::vector<double>(points, 1.0), lp::Relation::kEqual, 1.0);
  for (double d : spec.distances.distances) {
    program.add_row(kernel_column(omega, spec.grid, d), lp::Relation::kEqual, 0.0);
  }
  return program;
}

SimplexCut canonical_cut(int n) {
  check_dimension(n);
  const double a = 0.5 - 1.0 / (2.0 * n + 2.0);
  return {std::vector<double>(n + 1, a), 1.0, "canonical"};
}

double determinant(const std::vector<double>& matrix, std::size_t m) {
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      matrix.data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  return a.partialPivLu().determinant();
}

double min_eigenvalue(const std::vector<double>& matrix, std::size_t m) {
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      matrix.data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

std::pair<double, double> complete_simplex(int n, const std::vector<double>& known_squared_norms,
                                           double edge) {
  check_dimension(n);
  if (known_squared_norms.size() != static_cast<std::size_t>(n)) {
    throw DomainError("complete_simplex needs exactly n known squared norms");
  }
  if (!(edge > 0.0)) {
    throw DomainError("edge length must be positive");
  }
  const double e2 = edge * edge;
  std::vector<double> norms(n + 1);
  for (int i = 0; i < n; ++i) {
    if (!(known_squared_norms[i] >= 0.0)) {
      throw DomainError("squared norms must be nonnegative");
    }
    norms[i] = known_squared_norms[i] / e2;
  }
  // det(Gram) is a quadratic in the unknown norm c: only the last row and
  // column depend on c, linearly. Fit it from three evaluations.
  const auto det_at = [&](double c) {
    norms[n] = c;
    return determinant(gram_matrix(norms, 1.0), n + 1);
  };
  const double s = 1.0 + *std::max_element(norms.begin(), norms.end() - 1);
  const double f0 = det_at(0.0);
  const double fp = det_at(s);
  const double fm = det_at(-s);
  const double qa = (fp + fm - 2.0 * f0) / (2.0 * s * s);
  const double qb = (fp - fm) / (2.0 * s);
  const double qc = f0;

  double low;
  double high;
  const double scale = std::max({std::abs(qa) * s * s, std::abs(qb) * s, std::abs(qc)});
  if (std::abs(qa) * s * s <= 1e-14 * scale) {
    if (std::abs(qb) * s <= 1e-14 * scale) {
      throw NoCompletionError("Gram determinant does not depend on the unknown norm");
    }
    low = high = -qc / qb;
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) {
      if (disc < -1e-12 * qb * qb - 1e-300) {
        throw NoCompletionError("no real squared norm completes " + format_tuple(known_squared_norms));
      }
      disc = 0.0;
    }
    const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
    double r1 = q / qa;
    double r2 = (q != 0.0) ? qc / q : r1;
    low = std::min(r1, r2);
    high = std::max(r1, r2);
  }
  return {low * e2 + 0.0, high * e2 + 0.0};  // no negative zero
}

std::vector<ScoredCut> score_cuts(int n, const DistanceSet& distances, const Grid& grid,
                                  const CutSearchOptions& options) {
  check_dimension(n);
  distances.validate();
  grid.validate();
  check_search_options(options);
  const kernel::OmegaKernel omega(n);
  const double edge = distances[0];
  const double e2 = edge * edge;

  std::vector<std::vector<double>> distance_columns;
  for (double d : distances.distances) {
    distance_columns.push_back(kernel_column(omega, grid, d));
  }
  std::vector<const std::vector<double>*> distance_refs;
  for (const auto& column : distance_columns) {
    distance_refs.push_back(&column);
  }
  const int levels = options.max_index + 1;
  std::vector<std::vector<double>> lattice_columns(levels);
  parallel_for(levels, options.threads, [&](std::size_t j) {
    lattice_columns[j] =
        kernel_column(omega, grid, std::sqrt(options.step * static_cast<double>(j) * e2));
  });

  const auto tuples = lattice_tuples(n, options.max_index);

  struct Candidate {
    bool valid = false;
    ScoredCut cut;
  };
  std::vector<Candidate> candidates(2 * tuples.size());
  parallel_for(tuples.size(), options.threads, [&](std::size_t index) {
    const auto& tuple = tuples[index];
    std::vector<double> known(n);
    for (int i = 0; i < n; ++i) {
      known[i] = options.step * tuple[i] * e2;
    }
    std::pair<double, double> roots;
    try {
      roots = complete_simplex(n, known, edge);
    } catch (const NoCompletionError&) {
      return;
    }
    const double pair[2] = {roots.first, roots.second};
    for (int r = 0; r < 2; ++r) {
      if (r == 1 && pair[1] == pair[0]) {
        break;
      }
      SimplexCut cut{known, edge, {}};
      cut.squared_norms.push_back(pair[r]);
      if (!cut.defect().empty()) {
        continue;
      }
      // Column: shared lattice columns for the known norms, fresh for the root.
      std::vector<double> column = kernel_column(omega, grid, std::sqrt(pair[r]));
      for (int i = 0; i < n; ++i) {
        const auto& part = lattice_columns[tuple[i]];
        for (std::size_t k = 0; k < column.size(); ++k) {
          column[k] += part[k];
        }
      }
      const auto program = assemble_dual(n, distance_refs, {&column});
      const auto solution = lp::solve(program);
      if (solution.status != lp::Status::kOptimal) {
        continue;
      }
      cut.label = format_tuple(cut.squared_norms);
      candidates[2 * index + r] = {true, {std::move(cut), solution.objective_value}};
    }
  });

  std::vector<ScoredCut> ranked;
  for (auto& candidate : candidates) {
    if (candidate.valid) {
      ranked.push_back(std::move(candidate.cut));
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const ScoredCut& a, const ScoredCut& b) { return a.score < b.score; });
  return ranked;
}

std::vector<ScoredCut> cut_search(int n, const DistanceSet& distances, const Grid& grid,
                                  const CutSearchOptions& options) {
  auto ranked = score_cuts(n, distances, grid, options);
  if (ranked.size() > options.top_k) {
    ranked.resize(options.top_k);
  }
  return ranked;
}

std::vector<SimplexCut> candidate_cuts(int n, const DistanceSet& distances,
                                      const CutSearchOptions& options) {
  distances.validate();
  check_search_options(options);
  const double edge = distances[0];
  const double e2 = edge * edge;
  const auto tuples = lattice_tuples(n, options.max_index);
  std::vector<std::vector<SimplexCut>> found(tuples.size());
  parallel_for(tuples.size(), options.threads, [&](std::size_t index) {
    std::vector<double> known(n);
    for (int i = 0; i < n; ++i) {
      known[i] = options.step * tuples[index][i] * e2;
    }
    std::pair<double, double> roots;
    try {
      roots = complete_simplex(n, known, edge);
    } catch (const NoCompletionError&) {
      return;
    }
    for (double root : {roots.first, roots.second}) {
      SimplexCut cut{known, edge, {}};
      cut.squared_norms.push_back(root);
      if (cut.defect().empty()) {
        cut.label = format_tuple(cut.squared_norms);
        found[index].push_back(std::move(cut));
      }
      if (roots.second == roots.first) {
        break;
      }
    }
  });
  std::vector<SimplexCut> out;
  for (auto& cuts : found) {
    for (auto& cut : cuts) {
      out.push_back(std::move(cut));
    }
  }
  return out;
}

bool resolved_by(const SimplexCut& cut, int n, const Grid& grid) {
  const double reach = kernel::omega_min(n).t_star;
  for (double a : cut.squared_norms) {
    if (a > 0.0 && std::sqrt(a) * grid.t_max < reach) {
      return false;
    }
  }
  return true;
}

std::vector<SimplexCut> combine_cuts(int n, const DistanceSet& distances, const Grid& grid,
                                     const std::vector<SimplexCut>& pool,
                                     std::vector<SimplexCut> base, std::size_t count,
                                     std::size_t threads) {
  const kernel::OmegaKernel omega(n);
  const std::size_t fixed = base.size();
  const std::size_t first_cut = 1 + distances.size();

  // Cuts whose kernel terms barely move on [0, t_max] let the LP optimum go
  // negative just past the grid; certification would pay for that.
  std::vector<bool> active(pool.size(), false);
  std::vector<bool> usable(pool.size());
  for (std::size_t c = 0; c < pool.size(); ++c) {
    usable[c] = resolved_by(pool[c], n, grid);
  }

  const auto solve = [&](const std::vector<SimplexCut>& cuts) {
    auto solution = lp::solve(build_dual(ProblemSpec{n, distances, cuts, grid}).program);
    if (solution.status != lp::Status::kOptimal) {
      throw InternalError(std::string("cut combination LP ended ") + lp::status_name(solution.status));
    }
    return solution;
  };
  // Pool cuts ordered by how strongly the optimal multipliers of `solution`
  // violate them; a new z_c has reduced cost 1 - mu (n+1) - sum_t alpha_t col(t).
  const auto price = [&](const lp::LpSolution& solution, std::size_t limit) {
    const auto& duals = solution.row_duals;
    std::vector<std::pair<double, double>> support;  // (t, alpha_t)
    for (std::size_t i = 1; i < duals.size(); ++i) {
      if (duals[i] > 0.0) {
        support.emplace_back(grid.point(i), duals[i]);
      }
    }
    std::vector<double> violation(pool.size(), -std::numeric_limits<double>::infinity());
    parallel_for(pool.size(), threads, [&](std::size_t c) {
      if (active[c] || !usable[c]) {
        return;
      }
      double value = duals[0] * (n + 1.0) - 1.0;
      for (const auto& [t, alpha] : support) {
        for (double a : pool[c].squared_norms) {
          value += alpha * omega(t * std::sqrt(a));
        }
      }
      violation[c] = value;
    });
    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return violation[a] > violation[b]; });
    std::vector<std::size_t> best;
    for (std::size_t c : order) {
      if (best.size() == limit || !(violation[c] > 1e-10)) {
        break;
      }
      best.push_back(c);
    }
    return best;
  };

  // Column generation: bring in the most violated cuts until none prices out.
  std::vector<std::size_t> columns;  // pool index of base[fixed + k]
  lp::LpSolution solution;
  for (int round = 0; round < 200; ++round) {
    solution = solve(base);
    const auto entering = price(solution, 8);
    if (entering.empty()) {
      break;
    }
    for (std::size_t c : entering) {
      active[c] = true;
      columns.push_back(c);
      base.push_back(pool[c]);
    }
  }

  std::vector<std::size_t> used;  // pool indices carrying weight at the optimum
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (solution.values[first_cut + fixed + k] > 1e-12) {
      used.push_back(columns[k]);
    }
  }
  const auto with = [&](const std::vector<std::size_t>& keep) {
    std::vector<SimplexCut> cuts(base.begin(), base.begin() + static_cast<long>(fixed));
    for (std::size_t c : keep) {
      cuts.push_back(pool[c]);
    }
    return cuts;
  };
  const auto objective = [&](const std::vector<std::size_t>& keep) {
    return solve(with(keep)).objective_value;
  };
  if (used.size() <= count) {
    return with(used);
  }

  // Backward elimination down to `count`: drop the cut whose removal costs least.
  while (used.size() > count) {
    std::vector<double> cost(used.size());
    parallel_for(used.size(), threads, [&](std::size_t drop) {
      auto keep = used;
      keep.erase(keep.begin() + static_cast<long>(drop));
      cost[drop] = objective(keep);
    });
    used.erase(used.begin() + (std::min_element(cost.begin(), cost.end()) - cost.begin()));
  }

  // Exchange passes: re-pick each kept cut against the duals of the others.
  std::fill(active.begin(), active.end(), false);
  for (std::size_t c : used) {
    active[c] = true;
  }
  double current = objective(used);
  for (int pass = 0; pass < 4; ++pass) {
    bool improved = false;
    for (std::size_t slot = 0; slot < used.size(); ++slot) {
      auto others = used;
      others.erase(others.begin() + static_cast<long>(slot));
      const auto trial = price(solve(with(others)), 16);
      std::vector<double> value(trial.size());
      parallel_for(trial.size(), threads, [&](std::size_t k) {
        auto keep = others;
        keep.insert(keep.begin() + static_cast<long>(slot), trial[k]);
        value[k] = objective(keep);
      });
      const auto best = std::min_element(value.begin(), value.end());
      if (best == value.end() || !(*best < current - 1e-12)) {
        continue;
      }
      active[used[slot]] = false;
      used[slot] = trial[best - value.begin()];
      active[used[slot]] = true;
      current = *best;
      improved = true;
    }
    if (!improved) {
      break;
    }
  }
  return with(used);
}

BoundResult solve_bound(const ProblemSpec& spec) {
  auto model = build_dual(spec);
  const auto solution = lp::solve(model.program);
  if (solution.status != lp::Status::kOptimal) {
    throw InternalError(std::string("dual program not solved: ") + lp::status_name(solution.status));
  }
  BoundResult result;
  result.problem = spec;
  result.lp_objective = solution.objective_value;
  result.solution = solution.values;
  result.warnings = std::move(model.warnings);

  auto& cert = result.certificate;
  cert.n = spec.n;
  cert.z0 = solution.values[0];
  const std::size_t num_d = spec.distances.size();
  for (std::size_t k = 0; k < num_d; ++k) {
    cert.add_distance(spec.distances[k], solution.values[1 + k]);
  }
  for (std::size_t c = 0; c < spec.cuts.size(); ++c) {
    const double z = std::max(0.0, solution.values[1 + num_d + c]);
    result.solution[1 + num_d + c] = z;
    if (z > 0.0) {
      cert.add_cut(spec.cuts[c].squared_norms, z);
    }
  }
  certify::VerifyOptions options;
  options.t_max = spec.grid.t_max;
  options.step = spec.grid.step;
  result.report = certify::verify(cert, options);
  result.upper_bound = result.report.certified_bound;
  return result;
}

double analytic_one_distance(int n) {
  const double m = kernel::omega_min(n).value;
  return m / (m - 1.0);
}

long long chromatic_lower_bound(double upper_bound) {
  if (!(upper_bound > 0.0)) {
    throw DomainError("density bound must be positive");
  }
  if (upper_bound >= 1.0) {
    throw NoInformationError("a density bound of 1 or more gives no chromatic bound");
  }
  auto chi = static_cast<long long>(std::ceil(1.0 / upper_bound));
  while (chi > 1 && static_cast<double>(chi - 1) * upper_bound >= 1.0) {
    --chi;
  }
  while (static_cast<double>(chi) * upper_bound < 1.0) {
    ++chi;
  }
  return chi;
}

double analytic_chromatic_bound(int n) {
  return 1.0 - 1.0 / kernel::omega_min(n).value;
}

std::vector<SimplexCut> published_cuts(int n) {
  struct Frozen {
    std::vector<double> known;
    double last;
  };
  std::vector<Frozen> frozen;
  if (n == 2) {
    frozen = {{{2.4, 2.4}, 0.360314}, {{3.1, 3.1}, 6.524038}, {{3.7, 3.7}, 7.417141}};
  } else if (n == 3) {
    frozen = {{{0.3, 0.4, 0.4}, 0.417157},
              {{1.9, 1.9, 1.9}, 0.189372},
              {{2.0, 2.0, 2.0}, 0.225148}};
  }
  std::vector<SimplexCut> cuts;
  for (const auto& f : frozen) {
    const auto [low, high] = complete_simplex(n, f.known);
    const double root = std::abs(low - f.last) <= std::abs(high - f.last) ? low : high;
    SimplexCut cut{f.known, 1.0, {}};
    cut.squared_norms.push_back(root);
    cut.label = format_tuple(cut.squared_norms);
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

std::vector<SimplexCut> table_cuts(int n) {
  auto cuts = published_cuts(n);
  cuts.push_back(canonical_cut(n));
  return cuts;
}

}  // namespace dab::model
