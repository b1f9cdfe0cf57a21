#include "dab/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dab/bukh.hpp"
#include "dab/certificate_io.hpp"
#include "dab/certify.hpp"
#include "dab/error.hpp"
#include "dab/kernel.hpp"
#include "dab/model.hpp"
#include "dab/parallel.hpp"
#include "dab/simd.hpp"

namespace dab::cli {

namespace {

std::string fixed(double value, int digits = 9) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string sig6(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

struct GridFlags {
  double t_max = 0.0;  // 0: scaled default
  double step = 0.0;

  model::Grid resolve(double smallest_distance) const {
    model::Grid grid = model::default_grid(smallest_distance);
    if (t_max > 0.0) {
      grid.t_max = t_max;
    }
    if (step > 0.0) {
      grid.step = step;
    }
    grid.validate();
    return grid;
  }

  void attach(CLI::App* app) {
    app->add_option("--t-max", t_max, "Grid end (default 20 / d_1)");
    app->add_option("--step", step, "Grid step (default 0.0005 / d_1)");
  }
};

// A last norm typed with a few digits misses the degenerate simplex by
// rounding; move it onto the nearest exact root when that is a tiny change.
bool snap_last_norm(model::SimplexCut& cut, int n) {
  if (cut.defect().empty()) {
    return false;
  }
  const std::vector<double> known(cut.squared_norms.begin(), cut.squared_norms.end() - 1);
  std::pair<double, double> roots;
  try {
    roots = model::complete_simplex(n, known, cut.edge);
  } catch (const std::exception&) {
    return false;
  }
  double& last = cut.squared_norms.back();
  const double nearest =
      std::abs(roots.first - last) < std::abs(roots.second - last) ? roots.first : roots.second;
  if (std::abs(nearest - last) > 1e-6 * (1.0 + std::abs(last))) {
    return false;
  }
  last = nearest;
  return true;
}

// Lines of n+1 squared norms; the simplex edge equals the first distance.
std::vector<model::SimplexCut> read_cut_file(const std::string& path, int n, double edge,
                                             std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open cut file " + path);
  }
  std::vector<model::SimplexCut> cuts;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    model::SimplexCut cut;
    cut.edge = edge;
    double a;
    while (fields >> a) {
      cut.squared_norms.push_back(a);
    }
    if (!fields.eof()) {
      throw ParseError(path + ":" + std::to_string(number) + ": bad number");
    }
    if (cut.squared_norms.empty()) {
      continue;
    }
    if (cut.squared_norms.size() != static_cast<std::size_t>(n) + 1) {
      throw ParseError(path + ":" + std::to_string(number) + ": expected " +
                       std::to_string(n + 1) + " squared norms");
    }
    if (snap_last_norm(cut, n)) {
      err << "warning: " << path << ":" << number << ": last squared norm moved to "
          << std::setprecision(17) << cut.squared_norms.back() << '\n';
    }
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

model::SimplexCut scaled_canonical(int n, double edge) {
  auto cut = model::canonical_cut(n);
  for (double& a : cut.squared_norms) {
    a *= edge * edge;
  }
  cut.edge = edge;
  return cut;
}

void print_report(std::ostream& out, const certify::VerificationReport& report) {
  out << "grid_min          " << std::setprecision(10) << report.grid_min << '\n';
  out << "lipschitz_slack   " << report.lipschitz_slack << '\n';
  out << "inflation         " << report.inflation << '\n';
  out << "tail_threshold    " << report.tail_threshold << '\n';
  out << "tail_margin       " << report.tail_margin << '\n';
  out << "cells             " << report.cells << '\n';
  out << "verified          " << (report.verified ? "yes" : "no") << '\n';
  out << "certified_bound   " << fixed(report.certified_bound) << '\n';
}

std::string describe(const model::SimplexCut& cut) {
  std::string text = "(";
  for (std::size_t i = 0; i < cut.squared_norms.size(); ++i) {
    text += (i ? "," : "") + fixed(cut.squared_norms[i], 6);
  }
  return text + ")";
}

struct BoundFlags {
  int n = 0;
  std::vector<double> distances{1.0};
  std::string cut_policy = "none";
  std::string cut_file;
  std::string output;
  GridFlags grid;
  double search_step = 0.1;
  int search_max_index = 40;
  std::size_t top_k = 3;
};

int cmd_bound(const BoundFlags& flags, std::size_t threads, std::ostream& out, std::ostream& err) {
  model::ProblemSpec spec;
  spec.n = flags.n;
  spec.distances = model::DistanceSet(flags.distances);
  spec.distances.validate();
  spec.grid = flags.grid.resolve(spec.distances[0]);
  const double edge = spec.distances[0];
  if (flags.cut_policy == "canonical") {
    spec.cuts.push_back(scaled_canonical(spec.n, edge));
  } else if (flags.cut_policy == "table") {
    spec.cuts = model::table_cuts(spec.n);
  } else if (flags.cut_policy == "file") {
    if (flags.cut_file.empty()) {
      err << "error: --cut file needs --cut-file\n";
      return kExitInputError;
    }
    spec.cuts = read_cut_file(flags.cut_file, spec.n, edge, err);
  } else if (flags.cut_policy == "search") {
    model::CutSearchOptions options;
    options.step = flags.search_step;
    options.max_index = flags.search_max_index;
    options.top_k = flags.top_k;
    options.threads = threads;
    const auto pool = model::candidate_cuts(spec.n, spec.distances, options);
    spec.cuts = model::combine_cuts(spec.n, spec.distances, spec.grid, pool,
                                    {scaled_canonical(spec.n, edge)}, flags.top_k, threads);
  }

  const auto result = model::solve_bound(spec);
  for (const auto& warning : result.warnings) {
    err << "warning: " << warning << '\n';
  }
  out << "dimension         " << spec.n << '\n';
  out << "distances        ";
  for (double d : spec.distances.distances) {
    out << ' ' << std::setprecision(10) << d;
  }
  out << '\n';
  out << "grid              [0, " << spec.grid.t_max << "] step " << spec.grid.step << '\n';
  out << "lp_objective      " << fixed(result.lp_objective) << '\n';
  out << "z0                " << fixed(result.solution[0], 10) << '\n';
  for (std::size_t k = 0; k < spec.distances.size(); ++k) {
    out << "z" << (k + 1) << "                " << fixed(result.solution[1 + k], 10) << '\n';
  }
  for (std::size_t c = 0; c < spec.cuts.size(); ++c) {
    out << "z_cut " << describe(spec.cuts[c]) << "  "
        << fixed(result.solution[1 + spec.distances.size() + c], 10) << '\n';
  }
  print_report(out, result.report);
  out << "upper_bound       " << sig6(result.upper_bound) << '\n';
  if (result.upper_bound < 1.0) {
    out << "chromatic_bound   " << model::chromatic_lower_bound(result.upper_bound) << '\n';
  }
  if (!flags.output.empty()) {
    std::ostringstream provenance;
    provenance << "dabound bound, dual simplex, grid " << spec.grid.t_max << '/' << spec.grid.step
               << ", simd " << simd::isa_name(simd::active_isa()) << ", " << timestamp();
    io::save_certificate(flags.output, io::make_document(result, provenance.str()));
    out << "certificate       " << flags.output << '\n';
  }
  if (!result.report.verified) {
    err << "verification failed: " << result.report.failure << '\n';
    return kExitUnverified;
  }
  return kExitVerified;
}

struct TableRow {
  int n = 0;
  double bound = 1.0;
  long long chromatic = 0;
  bool verified = false;
};

int cmd_table(int from, int to, const std::string& format, const GridFlags& grid_flags,
              std::size_t threads, std::ostream& out, std::ostream& err) {
  if (from < 2 || to > 24 || from > to) {
    err << "error: dimensions must satisfy 2 <= from <= to <= 24\n";
    return kExitInputError;
  }
  std::vector<TableRow> rows(to - from + 1);
  const model::Grid grid = grid_flags.resolve(1.0);
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    model::ProblemSpec spec;
    spec.n = from + static_cast<int>(i);
    spec.grid = grid;
    spec.cuts = model::table_cuts(spec.n);
    const auto result = model::solve_bound(spec);
    rows[i] = {spec.n, result.upper_bound, model::chromatic_lower_bound(result.upper_bound),
               result.report.verified};
  });
  bool all_verified = true;
  if (format == "csv") {
    out << "n,upper_bound,chromatic_lower_bound\n";
    for (const auto& row : rows) {
      out << row.n << ',' << sig6(row.bound) << ',' << row.chromatic << '\n';
      all_verified = all_verified && row.verified;
    }
  } else {
    out << std::setw(4) << "n" << std::setw(16) << "upper_bound" << std::setw(24)
        << "chromatic_lower_bound" << '\n';
    for (const auto& row : rows) {
      out << std::setw(4) << row.n << std::setw(16) << sig6(row.bound) << std::setw(24)
          << row.chromatic << '\n';
      all_verified = all_verified && row.verified;
    }
    // For two far apart distances the planar density tends to the square.
    if (from == 2) {
      out << "two-distance plane bound (square of n = 2): " << sig6(rows[0].bound * rows[0].bound)
          << '\n';
    }
  }
  if (!all_verified) {
    err << "verification failed for at least one dimension\n";
    return kExitUnverified;
  }
  return kExitVerified;
}

int cmd_certify(const std::string& path, double max_inflation, std::ostream& out,
                std::ostream& err) {
  io::CertificateDocument doc;
  try {
    doc = io::load_certificate(path);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  for (const auto& term : doc.cuts) {
    const auto defect = term.cut.defect();
    if (!defect.empty()) {
      err << "verification failed: cut " << describe(term.cut) << ": " << defect << '\n';
      return kExitUnverified;
    }
    if (term.z < 0.0) {
      err << "verification failed: negative cut multiplier\n";
      return kExitUnverified;
    }
  }
  certify::VerifyOptions options;
  options.t_max = doc.grid.t_max;
  options.step = doc.grid.step;
  const auto report = certify::verify(doc.to_certificate(), options);
  out << "certificate       " << path << '\n';
  out << "dimension         " << doc.n << '\n';
  out << "claimed_bound     " << fixed(doc.claimed_bound) << '\n';
  print_report(out, report);
  if (!report.verified) {
    err << "verification failed: " << report.failure << '\n';
    return kExitUnverified;
  }
  if (report.inflation > max_inflation) {
    err << "verification failed: constraint function dips to " << -report.inflation
        << ", below the allowed " << -max_inflation << '\n';
    return kExitUnverified;
  }
  if (report.certified_bound > doc.claimed_bound + 1e-9) {
    err << "verification failed: certified bound exceeds the claimed bound\n";
    return kExitUnverified;
  }
  out << "bound             " << sig6(report.certified_bound) << '\n';
  return kExitVerified;
}

int cmd_plot_omega(int n, double from, double to, double step, std::ostream& out) {
  if (!(from >= 0.0) || !(to >= from) || !(step > 0.0)) {
    throw DomainError("plot range needs 0 <= from <= to and step > 0");
  }
  const kernel::OmegaKernel omega(n);
  const auto count = static_cast<long long>(std::floor((to - from) / step + 1e-9));
  char buffer[64];
  for (long long i = 0; i <= count; ++i) {
    const double t = from + static_cast<double>(i) * step;
    std::snprintf(buffer, sizeof buffer, "%.17g %.17g\n", t, omega(t));
    out << buffer;
  }
  return kExitVerified;
}

struct SearchFlags {
  int n = 0;
  std::vector<double> distances{1.0};
  double lattice_step = 0.1;
  int max_index = 40;
  std::size_t top_k = 3;
  int combine = -1;
  GridFlags grid;
};

int cmd_search_cuts(const SearchFlags& flags, std::size_t threads, std::ostream& out,
                    std::ostream& err) {
  const model::DistanceSet distances(flags.distances);
  distances.validate();
  const model::Grid grid = flags.grid.resolve(distances[0]);
  model::CutSearchOptions options;
  options.step = flags.lattice_step;
  options.max_index = flags.max_index;
  options.threads = threads;
  if (flags.top_k > 0) {  // scoring solves one LP per candidate
    const auto ranked = model::score_cuts(flags.n, distances, grid, options);
    out << "rank  score        squared_norms\n";
    for (std::size_t i = 0; i < ranked.size() && i < flags.top_k; ++i) {
      out << std::setw(4) << (i + 1) << "  " << fixed(ranked[i].score, 9) << "  "
          << describe(ranked[i].cut) << '\n';
    }
  }
  if (flags.combine < 0) {
    return kExitVerified;
  }
  // Combined bound: the regular simplex plus the `combine` heaviest cuts of
  // the optimum over every candidate.
  model::ProblemSpec spec;
  spec.n = flags.n;
  spec.distances = distances;
  spec.grid = grid;
  spec.cuts = model::combine_cuts(flags.n, distances, grid,
                                  model::candidate_cuts(flags.n, distances, options),
                                  {scaled_canonical(flags.n, distances[0])},
                                  static_cast<std::size_t>(flags.combine), threads);
  const auto result = model::solve_bound(spec);
  for (std::size_t c = 1; c < spec.cuts.size(); ++c) {
    out << "combined          " << describe(spec.cuts[c]) << '\n';
  }
  out << "combined_cuts     " << spec.cuts.size() << '\n';
  out << "combined_bound    " << sig6(result.upper_bound) << '\n';
  if (!result.report.verified) {
    err << "verification failed: " << result.report.failure << '\n';
    return kExitUnverified;
  }
  return kExitVerified;
}

int cmd_bukh(int n, int N, const std::string& output, std::ostream& out, std::ostream& err) {
  if (N < 1 || N > 10) {
    err << "error: N must lie in [1, 10]\n";
    return kExitInputError;
  }
  out << std::setw(3) << "N" << std::setw(14) << "eps" << std::setw(14) << "t0" << std::setw(18)
      << "t1" << std::setw(18) << "r" << '\n';
  bukh::SpacingResult last;
  for (int k = 1; k <= N; ++k) {
    last = bukh::spacing_ratio(n, k);
    out << std::setw(3) << k << std::setw(14) << std::setprecision(6) << last.epsilon
        << std::setw(14) << last.t0 << std::setw(18) << std::setprecision(10) << last.t1
        << std::setw(18) << last.ratio << '\n';
  }
  const auto distances = bukh::geometric_distances(N, 1.05 * last.ratio);
  const auto cert = bukh::bukh_certificate(n, distances);
  const auto report = certify::verify(cert);
  const double expected = std::ldexp(1.0, -N);
  out << "distances        ";
  for (double d : distances.distances) {
    out << ' ' << std::setprecision(10) << d;
  }
  out << '\n';
  print_report(out, report);
  out << "bound             " << sig6(report.certified_bound) << '\n';
  if (!output.empty()) {
    io::save_certificate(output, io::make_document(cert, model::Grid{}, expected,
                                                   "dabound bukh, spacing 1.05 r, " + timestamp()));
    out << "certificate       " << output << '\n';
  }
  if (!report.verified || report.certified_bound != expected) {
    err << "verification failed: " << (report.failure.empty() ? "bound exceeds 2^-N" : report.failure)
        << '\n';
    return kExitUnverified;
  }
  return kExitVerified;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Density bounds for sets avoiding prescribed distances"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: machine parallelism)");
  std::string isa = "auto";
  app.add_option("--simd", isa, "Vector kernels: auto, scalar, avx2, neon")
      ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));
  app.set_config("--config", "dabound.ini", "Configuration file (read from the working directory)");

  BoundFlags bound;
  auto* bound_cmd = app.add_subcommand("bound", "Certified upper bound for one problem");
  bound_cmd->add_option("--dim", bound.n, "Dimension n")->required()->check(CLI::Range(2, 26));
  bound_cmd->add_option("--distances", bound.distances, "Distances d_1 < ... < d_N");
  bound_cmd->add_option("--cut", bound.cut_policy, "Simplex cuts")
      ->check(CLI::IsMember({"none", "canonical", "table", "file", "search"}));
  bound_cmd->add_option("--cut-file", bound.cut_file, "File of squared-norm tuples (--cut file)");
  bound_cmd->add_option("--search-step", bound.search_step, "Lattice step for --cut search");
  bound_cmd->add_option("--search-max-index", bound.search_max_index, "Lattice size for --cut search");
  bound_cmd->add_option("--top-k", bound.top_k, "Cuts kept by --cut search");
  bound_cmd->add_option("--output,-o", bound.output, "Write the certificate here");
  bound.grid.attach(bound_cmd);

  int table_from = 2;
  int table_to = 24;
  std::string table_format = "csv";
  GridFlags table_grid;
  auto* table_cmd = app.add_subcommand("table", "Upper bounds on m_1 and chromatic lower bounds");
  table_cmd->add_option("--from", table_from, "First dimension");
  table_cmd->add_option("--to", table_to, "Last dimension");
  table_cmd->add_option("--format", table_format, "csv or text")
      ->check(CLI::IsMember({"csv", "text"}));
  table_grid.attach(table_cmd);

  std::string cert_path;
  double max_inflation = 1e-6;
  auto* certify_cmd = app.add_subcommand("certify", "Re-verify a certificate file");
  certify_cmd->add_option("path", cert_path, "Certificate file")->required();
  certify_cmd->add_option("--max-inflation", max_inflation,
                          "Largest tolerated dip of the constraint function below zero");

  int plot_n = 4;
  double plot_from = 0.0;
  double plot_to = 20.0;
  double plot_step = 0.01;
  auto* plot_cmd = app.add_subcommand("plot-omega", "Print t and Omega_n(t) in two columns");
  plot_cmd->add_option("--dim", plot_n, "Dimension n")->check(CLI::Range(2, 28));
  plot_cmd->add_option("--from", plot_from, "First t");
  plot_cmd->add_option("--to", plot_to, "Last t");
  plot_cmd->add_option("--step", plot_step, "Spacing of t");

  SearchFlags search;
  auto* search_cmd = app.add_subcommand("search-cuts", "Rank simplex cuts by their single-cut bound");
  search_cmd->add_option("--dim", search.n, "Dimension n")->required()->check(CLI::Range(2, 26));
  search_cmd->add_option("--distances", search.distances, "Distances d_1 < ... < d_N");
  search_cmd->add_option("--lattice-step", search.lattice_step, "Spacing of known squared norms");
  search_cmd->add_option("--max-index", search.max_index, "Largest lattice index");
  search_cmd->add_option("--top-k", search.top_k, "Cuts listed (0: skip the scoring pass)");
  search_cmd->add_option("--combine", search.combine,
                         "Also bound with the regular simplex and at most k lattice cuts");
  search.grid.attach(search_cmd);

  int bukh_n = 2;
  int bukh_N = 1;
  std::string bukh_output;
  auto* bukh_cmd = app.add_subcommand("bukh", "Spacing ratios and the 2^-N certificate");
  bukh_cmd->add_option("--dim", bukh_n, "Dimension n")->check(CLI::Range(2, 26));
  bukh_cmd->add_option("-N,--count", bukh_N, "Number of distances N")->required();
  bukh_cmd->add_option("--output,-o", bukh_output, "Write the certificate here");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInputError;
  }

  const simd::Isa wanted = isa == "avx2"     ? simd::Isa::kAvx2
                           : isa == "neon"   ? simd::Isa::kNeon
                           : isa == "scalar" ? simd::Isa::kScalar
                                             : simd::detected_isa();
  simd::select_isa(wanted);

  try {
    if (*bound_cmd) {
      return cmd_bound(bound, threads, out, err);
    }
    if (*table_cmd) {
      return cmd_table(table_from, table_to, table_format, table_grid, threads, out, err);
    }
    if (*certify_cmd) {
      return cmd_certify(cert_path, max_inflation, out, err);
    }
    if (*plot_cmd) {
      return cmd_plot_omega(plot_n, plot_from, plot_to, plot_step, out);
    }
    if (*search_cmd) {
      return cmd_search_cuts(search, threads, out, err);
    }
    if (*bukh_cmd) {
      return cmd_bukh(bukh_n, bukh_N, bukh_output, out, err);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitUnverified;
  }
  return kExitInputError;
}

}  // namespace dab::cli
