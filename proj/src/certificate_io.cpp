#include "dab/certificate_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dab/error.hpp"

namespace dab::io {

namespace {

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

class LineReader {
 public:
  LineReader(std::string line, std::size_t number) : line_(std::move(line)), number_(number) {}

  bool word(std::string& out) {
    skip_space();
    if (pos_ >= line_.size()) {
      return false;
    }
    const std::size_t start = pos_;
    while (pos_ < line_.size() && !std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
    out = line_.substr(start, pos_ - start);
    return true;
  }

  double number() {
    std::string token;
    if (!word(token)) {
      fail("missing number");
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
      fail("bad number '" + token + "'");
    }
    return value;
  }

  int integer() {
    const double value = number();
    if (value != std::floor(value) || std::abs(value) > 1e9) {
      fail("expected an integer");
    }
    return static_cast<int>(value);
  }

  std::string rest() {
    skip_space();
    std::string text = line_.substr(pos_);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
      text.pop_back();
    }
    pos_ = line_.size();
    return text;
  }

  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  void finish() {
    std::string extra;
    if (word(extra)) {
      fail("unexpected '" + extra + "'");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(number_) + ": " + what);
  }

 private:
  void skip_space() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
  }

  std::string line_;
  std::size_t number_;
  std::size_t pos_ = 0;
};

}  // namespace

double CertificateDocument::objective() const {
  double sum = z0;
  for (const auto& c : cuts) {
    sum += c.z;
  }
  return sum;
}

certify::DualCertificate CertificateDocument::to_certificate() const {
  certify::DualCertificate cert;
  cert.n = n;
  cert.z0 = z0;
  for (const auto& d : distances) {
    cert.add_distance(d.distance, d.z);
  }
  for (const auto& c : cuts) {
    cert.add_cut(c.cut.squared_norms, c.z);
  }
  return cert;
}

CertificateDocument parse_certificate(std::istream& in) {
  CertificateDocument doc;
  bool seen_version = false;
  bool seen_n = false;
  bool seen_grid = false;
  bool seen_z0 = false;
  bool seen_claim = false;
  bool seen_provenance = false;
  // Cuts are checked once n is known, which may come later in the file.
  std::vector<std::size_t> cut_lines;

  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    LineReader reader(line, number);
    std::string key;
    if (!reader.word(key)) {
      continue;
    }
    const auto once = [&](bool& seen) {
      if (seen) {
        reader.fail("duplicate '" + key + "'");
      }
      seen = true;
    };
    if (key == "schema_version") {
      once(seen_version);
      doc.schema_version = reader.integer();
      if (doc.schema_version != kSchemaVersion) {
        reader.fail("unsupported schema version " + std::to_string(doc.schema_version));
      }
    } else if (key == "n") {
      once(seen_n);
      doc.n = reader.integer();
      if (doc.n < 2 || doc.n > 26) {
        reader.fail("dimension out of range");
      }
    } else if (key == "grid") {
      once(seen_grid);
      doc.grid.t_max = reader.number();
      doc.grid.step = reader.number();
      try {
        doc.grid.validate();
      } catch (const DomainError& e) {
        reader.fail(e.what());
      }
    } else if (key == "z0") {
      once(seen_z0);
      doc.z0 = reader.number();
    } else if (key == "distance") {
      DistanceTerm term;
      term.distance = reader.number();
      term.z = reader.number();
      if (!(term.distance > 0.0)) {
        reader.fail("distance must be positive");
      }
      doc.distances.push_back(term);
    } else if (key == "cut") {
      CutTerm term;
      term.z = reader.number();
      term.cut.edge = reader.number();
      if (!(term.cut.edge > 0.0)) {
        reader.fail("cut edge must be positive");
      }
      while (!reader.at_end()) {
        const double a = reader.number();
        if (a < 0.0) {
          reader.fail("squared norms must be nonnegative");
        }
        term.cut.squared_norms.push_back(a);
      }
      cut_lines.push_back(number);
      doc.cuts.push_back(std::move(term));
    } else if (key == "claimed_bound") {
      once(seen_claim);
      doc.claimed_bound = reader.number();
    } else if (key == "provenance") {
      if (seen_provenance) {
        doc.provenance += "\n";
      }
      seen_provenance = true;
      doc.provenance += reader.rest();
    } else {
      reader.fail("unknown record '" + key + "'");
    }
    reader.finish();
  }
  if (!seen_version || !seen_n || !seen_z0 || !seen_claim) {
    throw ParseError("certificate lacks one of schema_version, n, z0, claimed_bound");
  }
  for (std::size_t c = 0; c < doc.cuts.size(); ++c) {
    const auto size = doc.cuts[c].cut.squared_norms.size();
    if (size != static_cast<std::size_t>(doc.n) + 1) {
      throw ParseError("line " + std::to_string(cut_lines[c]) + ": cut needs " +
                       std::to_string(doc.n + 1) + " squared norms, found " + std::to_string(size));
    }
  }
  if (doc.claimed_bound < doc.objective() - 1e-12) {
    throw ParseError("claimed_bound is below z0 + sum of cut multipliers");
  }
  return doc;
}

CertificateDocument load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open " + path);
  }
  return parse_certificate(in);
}

void write_certificate(std::ostream& out, const CertificateDocument& doc) {
  out << "schema_version " << doc.schema_version << '\n';
  out << "n " << doc.n << '\n';
  out << "grid " << format_number(doc.grid.t_max) << ' ' << format_number(doc.grid.step) << '\n';
  out << "z0 " << format_number(doc.z0) << '\n';
  for (const auto& d : doc.distances) {
    out << "distance " << format_number(d.distance) << ' ' << format_number(d.z) << '\n';
  }
  for (const auto& c : doc.cuts) {
    out << "cut " << format_number(c.z) << ' ' << format_number(c.cut.edge);
    for (double a : c.cut.squared_norms) {
      out << ' ' << format_number(a);
    }
    out << '\n';
  }
  out << "claimed_bound " << format_number(doc.claimed_bound) << '\n';
  std::istringstream lines(doc.provenance);
  std::string line;
  while (std::getline(lines, line)) {
    out << "provenance " << line << '\n';
  }
}

void save_certificate(const std::string& path, const CertificateDocument& doc) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write " + path);
  }
  write_certificate(out, doc);
  if (!out) {
    throw ParseError("failed writing " + path);
  }
}

CertificateDocument make_document(const model::BoundResult& result, const std::string& provenance) {
  CertificateDocument doc;
  const auto& spec = result.problem;
  doc.n = spec.n;
  doc.grid = spec.grid;
  doc.z0 = result.solution.at(0);
  for (std::size_t k = 0; k < spec.distances.size(); ++k) {
    doc.distances.push_back({spec.distances[k], result.solution.at(1 + k)});
  }
  for (std::size_t c = 0; c < spec.cuts.size(); ++c) {
    const double z = result.solution.at(1 + spec.distances.size() + c);
    if (z > 0.0) {
      doc.cuts.push_back({spec.cuts[c], z});
    }
  }
  doc.claimed_bound = std::max(result.upper_bound, doc.objective());
  doc.provenance = provenance;
  return doc;
}

CertificateDocument make_document(const certify::DualCertificate& cert, const model::Grid& grid,
                                  double claimed_bound, const std::string& provenance) {
  CertificateDocument doc;
  doc.n = cert.n;
  doc.grid = grid;
  doc.z0 = cert.z0;
  for (const auto& e : cert.entries) {
    doc.distances.push_back({e.radius, e.coefficient});
  }
  doc.claimed_bound = std::max(claimed_bound, cert.objective());
  doc.provenance = provenance;
  return doc;
}

}  // namespace dab::io
