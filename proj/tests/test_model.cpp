#include <doctest.h>

#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "dab/error.hpp"
#include "dab/kernel.hpp"
#include "dab/lp.hpp"
#include "dab/model.hpp"

using namespace dab;
using namespace dab::model;

namespace {

double dual_optimum(const ProblemSpec& spec) {
  const auto solution = lp::solve(build_dual(spec).program);
  REQUIRE(solution.status == lp::Status::kOptimal);
  return solution.objective_value;
}

double primal_optimum(const ProblemSpec& spec) {
  const auto program = build_primal(spec);
  const auto solution = lp::solve(program);
  REQUIRE(solution.status == lp::Status::kOptimal);
  CHECK(lp::max_relative_violation(program, solution.values) <= lp::kResidualTolerance);
  return solution.objective_value;
}

SimplexCut completed(int n, std::vector<double> known, bool high) {
  const auto [low, hi] = complete_simplex(n, known);
  known.push_back(high ? hi : low);
  return {known, 1.0, {}};
}

// 3(a^2+b^2+c^2+1) - (a+b+c+1)^2
double triangle_condition(double a, double b, double c) {
  return 3.0 * (a * a + b * b + c * c + 1.0) - (a + b + c + 1.0) * (a + b + c + 1.0);
}

// 3(a^2+b^2+c^2+d^2+1) - 2(ab+ac+ad+bc+bd+cd) - 2(a+b+c+d)
double tetrahedron_condition(double a, double b, double c, double d) {
  return 3.0 * (a * a + b * b + c * c + d * d + 1.0) -
         2.0 * (a * b + a * c + a * d + b * c + b * d + c * d) - 2.0 * (a + b + c + d);
}

}  // namespace

TEST_CASE("grid") {
  const Grid grid;
  CHECK(grid.cells() == 40000);
  CHECK(grid.point(0) == 0.0);
  CHECK(grid.point(40000) == 20.0);
  CHECK(grid.point(2) == 0.001);
  CHECK_THROWS_AS((Grid{1.0, 0.3}.validate()), DomainError);
  CHECK_THROWS_AS((Grid{1.0, 1e-7}.validate()), DomainError);
  CHECK_THROWS_AS((Grid{-1.0, 0.1}.validate()), DomainError);
  const auto scaled = default_grid(4.0);
  CHECK(scaled.t_max == 5.0);
  CHECK(scaled.step == 0.000125);
}

TEST_CASE("distance sets") {
  CHECK_NOTHROW(DistanceSet({1.0, 2.0}).validate());
  CHECK_THROWS_AS(DistanceSet(std::vector<double>{}).validate(), DomainError);
  CHECK_THROWS_AS(DistanceSet({1.0, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS(DistanceSet({2.0, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS(DistanceSet({0.0}).validate(), DomainError);
}

TEST_CASE("dual program layout") {
  ProblemSpec spec;
  spec.n = 4;
  spec.cuts = {canonical_cut(4)};
  spec.grid = {1.0, 0.25};
  const auto program = build_dual(spec).program;
  REQUIRE(program.num_variables() == 3);
  REQUIRE(program.num_rows() == 5);
  CHECK(program.objective()[0] == 1.0);
  CHECK(program.objective()[1] == 0.0);
  CHECK(program.objective()[2] == 1.0);
  CHECK_FALSE(program.lower_bound(0).has_value());
  CHECK_FALSE(program.lower_bound(1).has_value());
  CHECK(*program.lower_bound(2) == 0.0);
  const auto norm = program.row(0);
  CHECK(norm[0] == 1.0);
  CHECK(norm[1] == 1.0);
  CHECK(norm[2] == 5.0);
  CHECK(program.rhs(0) == 1.0);
  const auto row = program.row(2);  // t = 0.5
  CHECK(row[1] == kernel::omega(4, 0.5));
  CHECK(row[2] == doctest::Approx(5.0 * kernel::omega(4, 0.5 * std::sqrt(0.4))).epsilon(1e-15));
  CHECK(program.relation(2) == lp::Relation::kGreaterEqual);
  CHECK(program.rhs(2) == 0.0);
}

TEST_CASE("two-point grid reaches the closed form") {
  const double j = kernel::bessel_zero(1.0, 1).value;
  ProblemSpec spec;
  spec.n = 2;
  spec.grid = {j, j};
  const auto model = build_dual(spec);
  CHECK_FALSE(model.warnings.empty());
  const auto solution = lp::solve(model.program);
  REQUIRE(solution.status == lp::Status::kOptimal);
  CHECK(solution.objective_value == doctest::Approx(0.2871194).epsilon(1e-6));
  CHECK(solution.objective_value == doctest::Approx(analytic_one_distance(2)).epsilon(1e-12));
}

TEST_CASE("regular simplex in four dimensions") {
  ProblemSpec spec;
  spec.n = 4;
  spec.cuts = {canonical_cut(4)};
  const auto model = build_dual(spec);
  CHECK(model.warnings.empty());
  const auto solution = lp::solve(model.program);
  REQUIRE(solution.status == lp::Status::kOptimal);
  CHECK(std::abs(solution.objective_value - 0.112937) <= 1e-6);
  CHECK(std::abs(solution.values[0] - 0.0826818) <= 5e-6);
  CHECK(std::abs(solution.values[1] - 0.7660402) <= 5e-6);
  CHECK(std::abs(solution.values[2] - 0.0302556) <= 5e-6);
}

TEST_CASE("without cuts z0 is nonnegative") {
  for (int n : {2, 3, 5, 9, 16}) {
    for (const Grid& grid : {Grid{}, Grid{10.0, 0.01}, Grid{40.0, 0.004}}) {
      ProblemSpec spec;
      spec.n = n;
      spec.grid = grid;
      const auto solution = lp::solve(build_dual(spec).program);
      CAPTURE(n);
      CAPTURE(grid.t_max);
      if (grid.t_max < kernel::bessel_zero(0.5 * (n - 2), 1).value) {
        // Omega_n > 0 on every grid point: z_1 -> infinity drives z0 down.
        CHECK(solution.status == lp::Status::kUnbounded);
        continue;
      }
      REQUIRE(solution.status == lp::Status::kOptimal);
      CHECK(solution.values[0] >= -1e-9);
    }
  }
}

TEST_CASE("primal program") {
  ProblemSpec spec;
  spec.n = 2;
  const auto program = build_primal(spec);
  CHECK(program.num_variables() == 40001);
  CHECK(program.num_rows() == 2);
  CHECK(program.sense() == lp::Sense::kMaximize);

  // Every grid point inside the first positive lobe: no admissible measure.
  ProblemSpec lobe;
  lobe.n = 2;
  lobe.grid = {1.0, 0.5};
  CHECK(lp::solve(build_primal(lobe)).status == lp::Status::kInfeasible);

  ProblemSpec with_cut;
  with_cut.cuts = {canonical_cut(2)};
  CHECK_THROWS_AS(build_primal(with_cut), DomainError);
}

TEST_CASE("weak duality") {
  struct Instance {
    int n;
    DistanceSet d;
  };
  for (const auto& instance : {Instance{2, {1.0}}, Instance{3, {1.0}}, Instance{5, {1.0}},
                               Instance{2, {1.0, std::sqrt(3.0)}}, Instance{4, {1.0, 2.5}}}) {
    ProblemSpec spec;
    spec.n = instance.n;
    spec.distances = instance.d;
    CAPTURE(instance.n);
    CHECK(primal_optimum(spec) <= dual_optimum(spec) + 1e-7);
  }
}

TEST_CASE("primal value in three dimensions") {
  ProblemSpec spec;
  spec.n = 3;
  const double primal = primal_optimum(spec);
  CHECK(std::abs(primal - analytic_one_distance(3)) <= 1e-3);
  CHECK(primal <= analytic_one_distance(3) + 1e-7);
}

TEST_CASE("regular simplex norms") {
  CHECK(canonical_cut(2).squared_norms[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(canonical_cut(3).squared_norms[0] == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
  CHECK(canonical_cut(4).squared_norms[0] == doctest::Approx(2.0 / 5.0).epsilon(1e-15));
  for (int n = 2; n <= 26; ++n) {
    const auto cut = canonical_cut(n);
    CHECK(cut.squared_norms.size() == static_cast<std::size_t>(n + 1));
    CHECK(cut.defect().empty());
  }
}

TEST_CASE("simplex completion in the plane") {
  const auto [low, high] = complete_simplex(2, {2.4, 2.4});
  CHECK(low == doctest::Approx(0.360314).epsilon(2e-6));
  CHECK(high == doctest::Approx(5.439686).epsilon(2e-7));
  CHECK(complete_simplex(2, {3.1, 3.1}).second == doctest::Approx(6.524038).epsilon(2e-7));
  CHECK(complete_simplex(2, {3.7, 3.7}).second == doctest::Approx(7.417141).epsilon(2e-7));
  for (double r : {low, high}) {
    CHECK(std::abs(triangle_condition(2.4, 2.4, r)) < 1e-10);
  }
  CHECK_THROWS_AS(complete_simplex(2, {0.0, 5.0}), NoCompletionError);
  CHECK_THROWS_AS(complete_simplex(2, {1.0}), DomainError);
}

TEST_CASE("simplex completion in space") {
  const auto [low, high] = complete_simplex(3, {0.3, 0.4, 0.4});
  CHECK((std::abs(low - 0.417157) < 1e-6 || std::abs(high - 0.417157) < 1e-6));
  CHECK(complete_simplex(3, {1.9, 1.9, 1.9}).first == doctest::Approx(0.189372).epsilon(5e-6));
  CHECK(complete_simplex(3, {2.0, 2.0, 2.0}).first == doctest::Approx(0.225148).epsilon(5e-6));
  for (double r : {low, high}) {
    CHECK(std::abs(tetrahedron_condition(0.3, 0.4, 0.4, r)) < 1e-10);
  }
}

TEST_CASE("completed Gram matrices are singular and semidefinite") {
  for (int n : {2, 3, 4, 6}) {
    for (double a : {0.0, 0.3, 1.0, 2.2, 3.9}) {
      std::vector<double> known(n, a);
      known[0] = 0.5 * a + 0.1;
      std::pair<double, double> roots;
      try {
        roots = complete_simplex(n, known);
      } catch (const NoCompletionError&) {
        continue;
      }
      for (double r : {roots.first, roots.second}) {
        auto norms = known;
        norms.push_back(r);
        const auto gram = SimplexCut{norms, 1.0, {}}.gram();
        const std::size_t m = n + 1;
        double largest = 0.0;
        for (double v : gram) {
          largest = std::max(largest, std::abs(v));
        }
        CAPTURE(n);
        CAPTURE(a);
        CAPTURE(r);
        CHECK(std::abs(determinant(gram, m)) <= 1e-8 * (1.0 + largest * largest));
        for (std::size_t k = 1; k <= static_cast<std::size_t>(n); ++k) {
          std::vector<double> minor(k * k);
          for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
              minor[i * k + j] = gram[i * m + j];
            }
          }
          CHECK(determinant(minor, k) >= -1e-9);
        }
      }
    }
  }
}

TEST_CASE("cut validity") {
  CHECK(completed(2, {2.4, 2.4}, false).defect().empty());
  SimplexCut flat{{1.0, 1.0, 1.0}, 1.0, {}};
  CHECK_FALSE(flat.defect().empty());  // determinant far from zero
  SimplexCut negative{{-0.1, 1.0, 1.0}, 1.0, {}};
  CHECK_FALSE(negative.defect().empty());
  CHECK_THROWS_AS(canonical_cut(3).validate(2), DomainError);
  // A vertex at the origin is a legitimate simplex.
  SimplexCut origin{{0.0, 1.0, 1.0}, 1.0, {}};
  CHECK(origin.defect().empty());
  ProblemSpec spec;
  spec.cuts = {origin};
  const auto program = build_dual(spec).program;
  CHECK(program.row(1)[2] == doctest::Approx(1.0 + 2.0 * kernel::omega(2, 0.0005)).epsilon(1e-15));
  CHECK(lp::solve(program).status == lp::Status::kOptimal);
}

TEST_CASE("scale invariance") {
  const double c = 2.5;
  ProblemSpec base;
  base.n = 3;
  base.distances = {1.0, 1.7};
  base.cuts = {canonical_cut(3), completed(3, {0.3, 0.4, 0.4}, false)};
  base.grid = {20.0, 0.002};
  ProblemSpec scaled = base;
  for (double& d : scaled.distances.distances) {
    d *= c;
  }
  for (auto& cut : scaled.cuts) {
    cut.edge = c;
    for (double& a : cut.squared_norms) {
      a *= c * c;
    }
  }
  scaled.grid = {base.grid.t_max / c, base.grid.step / c};
  const auto p = build_dual(base).program;
  const auto q = build_dual(scaled).program;
  REQUIRE(p.num_rows() == q.num_rows());
  double worst = 0.0;
  for (std::size_t i = 0; i < p.num_rows(); ++i) {
    for (std::size_t j = 0; j < p.num_variables(); ++j) {
      worst = std::max(worst, std::abs(p.row(i)[j] - q.row(i)[j]));
    }
  }
  CHECK(worst <= 1e-12);
  CHECK(lp::solve(p).objective_value == doctest::Approx(lp::solve(q).objective_value).epsilon(1e-10));
}

TEST_CASE("monotonicity") {
  ProblemSpec one;
  one.n = 2;
  ProblemSpec two = one;
  two.distances = {1.0, std::sqrt(3.0)};
  CHECK(dual_optimum(two) <= dual_optimum(one) + 1e-9);

  const double without = dual_optimum(one);
  for (const auto& cut : {canonical_cut(2), completed(2, {2.4, 2.4}, false),
                          completed(2, {3.1, 3.1}, true), completed(2, {0.5, 1.2}, true)}) {
    ProblemSpec with = one;
    with.cuts = {cut};
    CHECK(dual_optimum(with) <= without + 1e-9);
  }

  for (int n : {2, 4, 7}) {
    ProblemSpec coarse;
    coarse.n = n;
    coarse.grid = {20.0, 0.01};
    ProblemSpec fine = coarse;
    fine.grid.step = 0.005;
    CHECK(dual_optimum(fine) >= dual_optimum(coarse) - 1e-9);
  }
}

TEST_CASE("one distance against the closed form") {
  CHECK(std::abs(analytic_one_distance(2) - 0.287119) <= 1e-6);
  CHECK(analytic_one_distance(3) == doctest::Approx(0.178458).epsilon(1e-5));
  for (int n = 2; n <= 24; ++n) {
    ProblemSpec spec;
    spec.n = n;
    const double analytic = analytic_one_distance(n);
    CAPTURE(n);
    CHECK(analytic > 0.0);
    CHECK(analytic <= 1.0 / 3.0);
    CHECK(std::abs(dual_optimum(spec) - analytic) <= 1e-4);
  }
}

TEST_CASE("certified bounds") {
  ProblemSpec spec;
  spec.n = 4;
  spec.cuts = {canonical_cut(4)};
  const auto four = solve_bound(spec);
  CHECK(four.report.verified);
  CHECK(std::abs(four.upper_bound - 0.112937) <= 1e-5);
  CHECK(four.upper_bound >= four.lp_objective);

  spec.n = 24;
  spec.cuts = {canonical_cut(24)};
  const auto twenty_four = solve_bound(spec);
  CHECK(twenty_four.report.verified);
  CHECK(std::abs(twenty_four.upper_bound - 0.00047489) <= 2e-6);

  ProblemSpec plane;
  plane.distances = {1.0, std::sqrt(3.0)};
  const auto pair = solve_bound(plane);
  CHECK(pair.report.verified);
  CHECK(pair.upper_bound <= 0.170213 + 1e-4);
  CHECK(pair.upper_bound >= pair.lp_objective);
}

TEST_CASE("chromatic bounds") {
  CHECK(chromatic_lower_bound(0.165609) == 7);
  CHECK(chromatic_lower_bound(0.112937) == 9);
  CHECK(chromatic_lower_bound(0.5) == 2);
  CHECK(chromatic_lower_bound(0.25) == 4);
  CHECK(chromatic_lower_bound(0.268412) == 4);
  CHECK_THROWS_AS(chromatic_lower_bound(1.0), NoInformationError);
  CHECK_THROWS_AS(chromatic_lower_bound(0.0), DomainError);
  const double m = kernel::omega_min(2).value;
  CHECK(analytic_chromatic_bound(2) == doctest::Approx(1.0 - 1.0 / m));
  CHECK(analytic_chromatic_bound(2) == doctest::Approx(1.0 / analytic_one_distance(2)));
}

TEST_CASE("frozen search results") {
  const auto plane = published_cuts(2);
  REQUIRE(plane.size() == 3);
  CHECK(plane[0].squared_norms[2] == doctest::Approx(0.360314).epsilon(2e-6));
  CHECK(plane[1].squared_norms[2] == doctest::Approx(6.524038).epsilon(2e-7));
  CHECK(plane[2].squared_norms[2] == doctest::Approx(7.417141).epsilon(2e-7));
  const auto space = published_cuts(3);
  REQUIRE(space.size() == 3);
  CHECK(space[0].squared_norms[3] == doctest::Approx(0.417157).epsilon(5e-6));
  CHECK(space[1].squared_norms[3] == doctest::Approx(0.189372).epsilon(5e-6));
  CHECK(space[2].squared_norms[3] == doctest::Approx(0.225148).epsilon(5e-6));
  for (const auto& cut : plane) {
    CHECK(cut.defect().empty());
  }
  for (const auto& cut : space) {
    CHECK(cut.defect().empty());
  }
  CHECK(published_cuts(4).empty());
  CHECK(table_cuts(4).size() == 1);
  CHECK(table_cuts(2).size() == 4);

  ProblemSpec spec;
  spec.n = 2;
  spec.cuts = plane;
  CHECK(std::abs(dual_optimum(spec) - 0.268412) <= 1e-6);
  spec.n = 3;
  spec.cuts = space;
  CHECK(std::abs(dual_optimum(spec) - 0.165609) <= 1e-6);
}

TEST_CASE("combined lattice search") {
  for (const auto& [n, count, target] :
       std::vector<std::tuple<int, std::size_t, double>>{{3, 3, 0.165609}, {2, 3, 0.268412}}) {
    const DistanceSet distances{1.0};
    const Grid grid = default_grid(1.0);
    const auto pool = candidate_cuts(n, distances);
    for (const auto& cut : pool) {
      REQUIRE(cut.defect().empty());
    }
    const auto cuts = combine_cuts(n, distances, grid, pool, {canonical_cut(n)}, count);
    CHECK(cuts.size() <= count + 1);
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      CHECK(resolved_by(cuts[i], n, grid));
    }
    const auto result = solve_bound(ProblemSpec{n, distances, cuts, grid});
    CAPTURE(n);
    CHECK(result.report.verified);
    CHECK(result.upper_bound <= target + 1e-4);
  }
}
