#pragma once

// Plain-text certificate documents. One record per line, '#' starts a
// comment, numbers carry 17 significant digits:
//
//   schema_version 1
//   n 4
//   grid 20 0.0005
//   z0 0.082681798...
//   distance 1 0.766039973...
//   cut 0.030255646... 1 0.4 0.4 0.4 0.4 0.4      (z_c, edge, squared norms)
//   claimed_bound 0.11293744...
//   provenance free text until the end of the line

#include <iosfwd>
#include <string>
#include <vector>

#include "dab/certify.hpp"
#include "dab/model.hpp"

namespace dab::io {

inline constexpr int kSchemaVersion = 1;

struct DistanceTerm {
  double distance = 1.0;
  double z = 0.0;
};

struct CutTerm {
  model::SimplexCut cut;
  double z = 0.0;
};

struct CertificateDocument {
  int schema_version = kSchemaVersion;
  int n = 2;
  model::Grid grid;
  double z0 = 0.0;
  std::vector<DistanceTerm> distances;
  std::vector<CutTerm> cuts;
  double claimed_bound = 1.0;
  std::string provenance;

  /// z0 + sum of cut multipliers.
  double objective() const;
  certify::DualCertificate to_certificate() const;
};

/// Throws ParseError on unknown records, malformed numbers, missing required
/// records (schema_version, n, z0, claimed_bound), a cut with other than n+1
/// norms, or a claimed bound below z0 + sum z_c - 1e-12.
CertificateDocument parse_certificate(std::istream& in);
CertificateDocument load_certificate(const std::string& path);

void write_certificate(std::ostream& out, const CertificateDocument& doc);
void save_certificate(const std::string& path, const CertificateDocument& doc);

/// Document for a solved and certified bound.
CertificateDocument make_document(const model::BoundResult& result, const std::string& provenance);

/// Document for a certificate with distance terms only.
CertificateDocument make_document(const certify::DualCertificate& cert, const model::Grid& grid,
                                  double claimed_bound, const std::string& provenance);

}  // namespace dab::io
