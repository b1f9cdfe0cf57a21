#include "dab/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "dab/error.hpp"
#include "dab/kernel.hpp"
#include "dab/simd.hpp"

namespace dab::certify {

namespace {

constexpr double kNormalizationTolerance = 1e-9;
// Bisection stops refining a cell once its bound is this close to the
// smallest value sampled so far.
constexpr double kTightness = 1e-12;

struct Prepared {
  int n = 2;
  double z0 = 0.0;
  std::vector<double> radius;
  std::vector<double> weight;
  double floor = -0.5;  // global minimum of Omega_n, rounded down
};

Prepared prepare(const DualCertificate& cert) {
  std::map<double, double> merged;
  for (const auto& e : cert.entries) {
    merged[e.radius] += e.coefficient;
  }
  Prepared p;
  p.n = cert.n;
  p.z0 = cert.z0;
  for (const auto& [r, w] : merged) {
    if (w == 0.0) {
      continue;
    }
    if (r == 0.0) {
      p.z0 += w;  // Omega_n(0) = 1
      continue;
    }
    p.radius.push_back(r);
    p.weight.push_back(w);
  }
  p.floor = kernel::omega_min(cert.n).value - 1e-12;
  return p;
}

// Lower bound of w * Omega_n(s) over s in [sa, sb] from range information only.
double rough_bound(const Prepared& p, double w, double sa, double sb) {
  const double tail = sa > 0.0 ? kernel::envelope(p.n, sa) : 1.0;
  if (w >= 0.0) {
    const double lower = std::max({p.floor, 1.0 - sb * sb / (2.0 * p.n), -tail});
    return w * lower;
  }
  return w * std::min(1.0, tail);
}

class RangeCertifier {
 public:
  RangeCertifier(const Prepared& p, const VerifyOptions& options)
      : p_(p), options_(options) {}

  // Bounds z from below on [a0, a1] using base cells of width about `step`.
  void run(double a0, double a1) {
    const auto cells = std::max<long long>(1, std::llround((a1 - a0) / options_.step));
    const double h = (a1 - a0) / static_cast<double>(cells);
    const std::size_t points = static_cast<std::size_t>(cells) + 1;
    const std::size_t entries = p_.radius.size();
    const auto point = [&](std::size_t i) {
      return i + 1 == points ? a1 : a0 + static_cast<double>(i) * h;
    };

    // Per-entry samples and the full constraint function on the base grid.
    std::vector<std::vector<double>> samples(entries, std::vector<double>(points));
    std::vector<double> full(points, p_.z0);
    for (std::size_t j = 0; j < entries; ++j) {
      const kernel::OmegaKernel omega(p_.n);
      for (std::size_t i = 0; i < points; ++i) {
        samples[j][i] = omega(point(i) * p_.radius[j]);
      }
      simd::axpy(p_.weight[j], samples[j], full);
    }
    grid_min_ = std::min(grid_min_, simd::min_value(full));
    sampled_min_ = std::min(sampled_min_, grid_min_);

    std::vector<double> va(entries);
    std::vector<double> vb(entries);
    for (std::size_t i = 0; i + 1 < points; ++i) {
      for (std::size_t j = 0; j < entries; ++j) {
        va[j] = samples[j][i];
        vb[j] = samples[j][i + 1];
      }
      refine(point(i), point(i + 1), va, vb);
    }
  }

  double certified_min() const { return certified_min_; }
  double grid_min() const { return grid_min_; }
  std::size_t cells() const { return cells_; }

 private:
  struct Cell {
    double a;
    double b;
    int depth;
    std::vector<double> va;
    std::vector<double> vb;
  };

  double full_value(const std::vector<double>& v) const {
    double z = p_.z0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      z += p_.weight[j] * v[j];
    }
    return z;
  }

  double lower_bound(double a, double b, const std::vector<double>& va,
                     const std::vector<double>& vb) const {
    const double width = b - a;
    double fa = 0.0;
    double fb = 0.0;
    double curvature = 0.0;
    double rough = 0.0;
    for (std::size_t j = 0; j < va.size(); ++j) {
      const double r = p_.radius[j];
      const double w = p_.weight[j];
      if (r * width <= options_.smooth_width) {
        fa += w * va[j];
        fb += w * vb[j];
        curvature += std::abs(w) * r * r / p_.n;
      } else {
        rough += rough_bound(p_, w, a * r, b * r);
      }
    }
    // Smooth part: f(a + s) >= fa + (fb - fa) s / h - curvature s (h - s) / 2.
    double smooth = std::min(fa, fb);
    if (curvature > 0.0) {
      const double s = std::clamp(0.5 * width - (fb - fa) / (width * curvature), 0.0, width);
      smooth = std::min(smooth, fa + (fb - fa) * (s / width) - 0.5 * curvature * s * (width - s));
    }
    return p_.z0 + smooth + rough;
  }

  void refine(double a, double b, const std::vector<double>& va, const std::vector<double>& vb) {
    std::vector<Cell> stack;
    stack.push_back({a, b, 0, va, vb});
    while (!stack.empty()) {
      Cell cell = std::move(stack.back());
      stack.pop_back();
      ++cells_;
      const double lb = lower_bound(cell.a, cell.b, cell.va, cell.vb);
      const double target = sampled_min_ < 0.0 ? sampled_min_ - kTightness : 0.0;
      const double mid = 0.5 * (cell.a + cell.b);
      const bool can_split = cell.depth < options_.max_depth && mid > cell.a && mid < cell.b &&
                             cells_ < options_.node_budget;
      if (lb >= target || !can_split) {
        certified_min_ = std::min(certified_min_, lb);
        continue;
      }
      std::vector<double> vm(cell.va.size());
      for (std::size_t j = 0; j < vm.size(); ++j) {
        vm[j] = kernel::omega(p_.n, mid * p_.radius[j]);
      }
      sampled_min_ = std::min(sampled_min_, full_value(vm));
      stack.push_back({mid, cell.b, cell.depth + 1, vm, std::move(cell.vb)});
      stack.push_back({cell.a, mid, cell.depth + 1, cell.va, std::move(vm)});
    }
  }

  const Prepared& p_;
  const VerifyOptions& options_;
  double certified_min_ = std::numeric_limits<double>::infinity();
  double grid_min_ = std::numeric_limits<double>::infinity();
  double sampled_min_ = std::numeric_limits<double>::infinity();
  std::size_t cells_ = 0;
};

// z0 + inflation + worst case of every term on [T, infinity), minus the
// required surplus.
double tail_margin(const Prepared& p, double inflation, double t, double epsilon) {
  double total = p.z0 + inflation;
  for (std::size_t j = 0; j < p.radius.size(); ++j) {
    const double e = kernel::envelope(p.n, t * p.radius[j]);
    const double w = p.weight[j];
    total += w >= 0.0 ? w * std::max(p.floor, -e) : w * std::min(1.0, e);
  }
  return total - epsilon;
}

}  // namespace

void DualCertificate::add_distance(double distance, double coefficient) {
  entries.push_back({distance, coefficient});
}

void DualCertificate::add_cut(std::span<const double> squared_norms, double coefficient) {
  for (double a : squared_norms) {
    entries.push_back({std::sqrt(a), coefficient});
  }
  objective_extra += coefficient;
}

double DualCertificate::normalization_slack() const {
  double sum = z0;
  for (const auto& e : entries) {
    sum += e.coefficient;
  }
  return sum - 1.0;
}

void DualCertificate::validate() const {
  if (n < 2 || n > 26) {
    throw DomainError("certificate dimension must lie in [2, 26], got " + std::to_string(n));
  }
  if (!std::isfinite(z0) || !std::isfinite(objective_extra)) {
    throw DomainError("certificate z0 and objective must be finite");
  }
  for (const auto& e : entries) {
    if (!std::isfinite(e.coefficient)) {
      throw DomainError("certificate coefficients must be finite");
    }
    if (!(e.radius >= 0.0) || !std::isfinite(e.radius)) {
      throw DomainError("certificate radii must be finite and nonnegative");
    }
  }
}

double constraint_value(const DualCertificate& cert, double t) {
  const kernel::OmegaKernel omega(cert.n);
  double z = cert.z0;
  for (const auto& e : cert.entries) {
    z += e.coefficient * omega(t * e.radius);
  }
  return z;
}

double lipschitz_constant(const DualCertificate& cert, double t_max) {
  return curvature_constant(cert) * t_max;
}

double curvature_constant(const DualCertificate& cert) {
  double sum = 0.0;
  for (const auto& e : cert.entries) {
    sum += std::abs(e.coefficient) * e.radius * e.radius;
  }
  return sum / cert.n;
}

VerificationReport verify(const DualCertificate& cert, const VerifyOptions& options) {
  cert.validate();
  if (!(options.t_max > 0.0) || !(options.step > 0.0) || options.step > options.t_max) {
    throw DomainError("verify needs 0 < step <= t_max");
  }
  const Prepared p = prepare(cert);
  VerificationReport report;

  RangeCertifier certifier(p, options);
  certifier.run(0.0, options.t_max);

  const double slack = cert.normalization_slack();
  const auto settle = [&] {
    report.grid_min = certifier.grid_min();
    report.lipschitz_slack = certifier.grid_min() - certifier.certified_min();
    report.inflation = std::max({0.0, -certifier.certified_min(), -slack});
    report.cells = certifier.cells();
  };
  settle();

  // Tail: doubling T with certified sampling in between, up to the limit.
  const double limit = options.tail_limit_factor * options.t_max;
  double t = options.t_max;
  report.tail_margin = tail_margin(p, report.inflation, t, options.tail_epsilon);
  while (report.tail_margin < 0.0 && t < limit) {
    const double next = std::min(2.0 * t, limit);
    certifier.run(t, next);
    settle();
    t = next;
    report.tail_margin = tail_margin(p, report.inflation, t, options.tail_epsilon);
  }
  report.tail_threshold = t;
  report.certified_bound = cert.z0 + report.inflation + cert.objective_extra;

  if (slack < -kNormalizationTolerance) {
    report.failure = "normalization: z0 + sum of coefficients falls short of 1 by " +
                     std::to_string(-slack);
  } else if (report.tail_margin < 0.0) {
    report.failure = "tail: envelope bounds do not close beyond t = " + std::to_string(t);
  }
  report.verified = report.failure.empty();
  return report;
}

}  // namespace dab::certify
