// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dab/bukh.hpp"
#include "dab/certificate_io.hpp"
#include "dab/certify.hpp"
#include "dab/cli.hpp"
#include "dab/kernel.hpp"
#include "dab/lp.hpp"
#include "dab/model.hpp"
#include "oracle/bessel_oracle.hpp"

using namespace dab;

namespace {

struct Row {
  int n;
  double bound;
  long long chromatic;  // 0: no entry
};

// New upper bounds and chromatic lower bounds, n = 2..24.
constexpr std::array<Row, 23> kTable{{
    {2, 0.268412, 0},        {3, 0.165609, 7},       {4, 0.112937, 9},
    {5, 0.0752845, 14},      {6, 0.0515709, 20},     {7, 0.0361271, 28},
    {8, 0.0257971, 39},      {9, 0.0187324, 54},     {10, 0.0138079, 73},
    {11, 0.0103166, 97},     {12, 0.00780322, 129},  {13, 0.00596811, 168},
    {14, 0.00461051, 217},   {15, 0.00359372, 279},  {16, 0.00282332, 355},
    {17, 0.00223324, 448},   {18, 0.00177663, 563},  {19, 0.00141992, 705},
    {20, 0.00113876, 879},   {21, 0.00091531, 1093}, {22, 0.00073636, 1359},
    {23, 0.00059204, 1690},  {24, 0.00047489, 2106},
}};

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) {
    ++failures;
  }
}

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, fmt, a, b, c);
  return buffer;
}

double dual_optimum(const model::ProblemSpec& spec) {
  const auto solution = lp::solve(model::build_dual(spec).program);
  return solution.status == lp::Status::kOptimal ? solution.objective_value : NAN;
}

std::vector<model::BoundResult> table_results() {
  std::vector<model::BoundResult> out;
  for (const auto& row : kTable) {
    model::ProblemSpec spec;
    spec.n = row.n;
    spec.cuts = model::table_cuts(row.n);
    out.push_back(model::solve_bound(spec));
  }
  return out;
}

void criterion_table(const std::vector<model::BoundResult>& results) {
  double worst = 0.0;
  int worst_n = 0;
  bool verified = true;
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    const double error = std::abs(results[i].upper_bound - kTable[i].bound);
    verified = verified && results[i].report.verified;
    if (error >= worst) {
      worst = error;
      worst_n = kTable[i].n;
    }
  }
  report(1, verified && worst <= 2e-4,
         format("max |bound - table| = %.3g at n = %.0f", worst, worst_n) +
             (verified ? "" : ", some bound unverified"));
}

void criterion_chromatic(const std::vector<model::BoundResult>& results) {
  int mismatches = 0;
  std::string first;
  for (std::size_t i = 0; i < kTable.size(); ++i) {
    if (kTable[i].chromatic == 0) {
      continue;
    }
    const long long got = model::chromatic_lower_bound(results[i].upper_bound);
    if (got != kTable[i].chromatic) {
      ++mismatches;
      if (first.empty()) {
        first = ", first at n = " + std::to_string(kTable[i].n) + ": " + std::to_string(got);
      }
    }
  }
  report(2, mismatches == 0, std::to_string(mismatches) + " mismatches over n = 3..24" + first);
}

void criterion_simplex_four() {
  model::ProblemSpec spec;
  spec.n = 4;
  spec.cuts = {model::canonical_cut(4)};
  const auto result = model::solve_bound(spec);
  const std::array<double, 3> expected{0.0826818, 0.7660402, 0.0302556};
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    worst = std::max(worst, std::abs(result.solution[i] - expected[i]));
  }
  const bool ok = std::abs(result.lp_objective - 0.112937) <= 1e-5 && worst <= 5e-4 &&
                  result.report.verified && result.report.inflation <= 1e-6;
  report(3, ok,
         format("objective %.9f, max coordinate error %.2g, inflation %.2g", result.lp_objective,
                worst, result.report.inflation));
}

void criterion_analytic() {
  double worst = 0.0;
  for (int n = 2; n <= 24; ++n) {
    model::ProblemSpec spec;
    spec.n = n;
    worst = std::max(worst, std::abs(dual_optimum(spec) - model::analytic_one_distance(n)));
  }
  const double plane = model::analytic_one_distance(2);
  report(4, worst <= 1e-4 && std::abs(plane - 0.287119) <= 1e-6,
         format("max |LP - closed form| = %.3g, plane value %.9f", worst, plane));
}

void criterion_two_distances() {
  const double ratio = kernel::bessel_zero(1.0, 2).value / kernel::bessel_zero(1.0, 1).value;
  model::ProblemSpec first;
  first.distances = {1.0, std::sqrt(3.0)};
  model::ProblemSpec second;
  second.distances = {1.0, ratio};
  const auto a = model::solve_bound(first);
  const auto b = model::solve_bound(second);
  const bool ok = a.report.verified && b.report.verified && a.upper_bound <= 0.170213 + 1e-4 &&
                  b.upper_bound <= 0.141577 + 1e-4;
  report(5, ok, format("{1, sqrt 3}: %.6f, {1, j12/j11}: %.6f", a.upper_bound, b.upper_bound));
}

void criterion_spacing() {
  int bad = 0;
  double largest = 0.0;
  for (int n : {2, 3, 4}) {
    for (int N = 1; N <= 5; ++N) {
      const auto spacing = bukh::spacing_ratio(n, N);
      const auto cert =
          bukh::bukh_certificate(n, bukh::geometric_distances(N, 1.05 * spacing.ratio));
      const auto result = certify::verify(cert);
      largest = std::max(largest, spacing.ratio);
      if (!(spacing.ratio > 1.0) || !result.verified ||
          result.certified_bound != std::ldexp(1.0, -N)) {
        ++bad;
      }
    }
  }
  report(6, bad == 0, std::to_string(bad) + " of 15 cases fail" + format(", largest r = %.6g", largest));
}

void criterion_kernel() {
  double worst = 0.0;
  for (int twice = 0; twice <= 24; ++twice) {
    const double alpha = 0.5 * twice;
    for (int i = 0; i <= 4000; ++i) {
      const double t = 0.01 * i;
      worst = std::max(worst, std::abs(kernel::bessel_j(alpha, t) - oracle::bessel_j(alpha, t)));
    }
  }
  const double z1 = kernel::bessel_zero(1.0, 1).value;
  const double z2 = kernel::bessel_zero(1.0, 2).value;
  const double o1 = static_cast<double>(oracle::bessel_zero(oracle::Real(1), oracle::Real(3.8), oracle::Real(3.9)));
  const double o2 = static_cast<double>(oracle::bessel_zero(oracle::Real(1), oracle::Real(7.0), oracle::Real(7.1)));
  const bool ok = worst <= 1e-12 && std::abs(z1 - 3.8317059702) <= 1e-9 &&
                  std::abs(z2 - 7.0155866698) <= 1e-9 && std::abs(z1 - o1) <= 1e-12 &&
                  std::abs(z2 - o2) <= 1e-12;
  report(7, ok, format("max error %.3g, j11 = %.10f, j12 = %.10f", worst, z1, z2));
}

// Compact rerun of the property suites; each failing property is named.
void criterion_properties() {
  std::vector<std::string> failed;
  const auto expect = [&](bool ok, const std::string& name) {
    if (!ok) {
      failed.push_back(name);
    }
  };

  double quadratic = 0.0;
  double recurrence = 0.0;
  double derivative = 0.0;
  for (int n = 2; n <= 26; ++n) {
    for (int i = 0; i <= 4000; ++i) {
      const double t = 0.01 * i;
      quadratic = std::min(quadratic, kernel::omega(n, t) - (1.0 - t * t / (2.0 * n)));
      if (n <= 24) {
        derivative = std::max(derivative, std::abs(kernel::omega_derivative(n, t) +
                                                   (t / n) * kernel::omega(n + 2, t)));
      }
      if (n >= 4 && t > 0.0) {
        const double a = 0.5 * (n - 2);
        const double rhs = kernel::omega(n - 2, t) +
                           std::tgamma(a) * std::pow(2.0 / t, a - 1.0) * kernel::bessel_j(a + 1.0, t);
        recurrence = std::max(recurrence, std::abs(kernel::omega(n, t) - rhs));
      }
    }
    expect(kernel::omega_min(n).value >= -0.5, "minimum above -1/2");
  }
  expect(quadratic >= -1e-12, "quadratic lower bound");
  expect(recurrence <= 1e-10, "dimension recurrence");
  expect(derivative <= 1e-10, "derivative identity");

  std::vector<model::ProblemSpec> instances;
  for (int n : {2, 3, 4, 8}) {
    model::ProblemSpec spec;
    spec.n = n;
    instances.push_back(spec);
  }
  {
    model::ProblemSpec spec;
    spec.distances = {1.0, std::sqrt(3.0)};
    instances.push_back(spec);
  }
  for (const auto& spec : instances) {
    const auto primal = lp::solve(model::build_primal(spec));
    expect(primal.status == lp::Status::kOptimal &&
               primal.objective_value <= dual_optimum(spec) + 1e-7,
           "weak duality");
  }

  model::ProblemSpec plane;
  model::ProblemSpec pair = plane;
  pair.distances = {1.0, std::sqrt(3.0)};
  expect(dual_optimum(pair) <= dual_optimum(plane) + 1e-9, "monotone in distances");
  model::ProblemSpec cut = plane;
  cut.cuts = {model::canonical_cut(2)};
  expect(dual_optimum(cut) <= dual_optimum(plane) + 1e-9, "monotone in cuts");
  model::ProblemSpec coarse;
  coarse.n = 5;
  coarse.grid = {20.0, 0.01};
  model::ProblemSpec fine = coarse;
  fine.grid.step = 0.005;
  expect(dual_optimum(fine) >= dual_optimum(coarse) - 1e-9, "monotone in grid");
  model::ProblemSpec scaled = coarse;
  scaled.distances = {3.0};
  scaled.grid = {20.0 / 3.0, 0.01 / 3.0};
  expect(std::abs(dual_optimum(scaled) - dual_optimum(coarse)) <= 1e-10, "scale invariance");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uniform(0.0, 200.0);
  for (int n : {2, 4, 7}) {
    model::ProblemSpec spec;
    spec.n = n;
    spec.cuts = model::table_cuts(n);
    const auto result = model::solve_bound(spec);
    double lowest = 1.0;
    for (int i = 0; i < 10000; ++i) {
      lowest = std::min(lowest, certify::constraint_value(result.certificate, uniform(rng)) +
                                    result.report.inflation);
    }
    expect(result.report.verified && lowest >= -1e-12, "soundness at random points");

    const auto doc = io::make_document(result, "acceptance");
    std::stringstream buffer;
    io::write_certificate(buffer, doc);
    const auto back = io::parse_certificate(buffer);
    const auto again = certify::verify(back.to_certificate());
    expect(back.z0 == doc.z0 && back.claimed_bound == doc.claimed_bound &&
               std::abs(again.certified_bound - result.report.certified_bound) <= 1e-12,
           "certificate round trip");
  }

  std::string detail = failed.empty() ? "all properties hold" : "failed:";
  for (const auto& name : failed) {
    detail += " [" + name + "]";
  }
  report(8, failed.empty(), detail);
}

void criterion_negative_control() {
  model::ProblemSpec spec;
  spec.n = 4;
  spec.cuts = {model::canonical_cut(4)};
  auto doc = io::make_document(model::solve_bound(spec), "acceptance");
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = (dir / "dabound_acceptance_good.cert").string();
  const auto bad = (dir / "dabound_acceptance_bad.cert").string();
  io::save_certificate(good, doc);
  doc.z0 -= 1e-3;
  doc.claimed_bound -= 1e-3;
  io::save_certificate(bad, doc);
  std::ostringstream out;
  std::ostringstream err;
  const int accepted = cli::run({"dabound", "certify", good}, out, err);
  const int rejected = cli::run({"dabound", "certify", bad}, out, err);
  report(9, accepted == 0 && rejected == 2,
         "original exits " + std::to_string(accepted) + ", perturbed exits " + std::to_string(rejected));
}

}  // namespace

int main() {
  const auto results = table_results();
  criterion_table(results);
  criterion_chromatic(results);
  criterion_simplex_four();
  criterion_analytic();
  criterion_two_distances();
  criterion_spacing();
  criterion_kernel();
  criterion_properties();
  criterion_negative_control();
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
