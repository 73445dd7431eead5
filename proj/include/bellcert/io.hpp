#ifndef BELLCERT_IO_HPP
#define BELLCERT_IO_HPP

// JSON interchange. Matrices are nested row-major arrays of [re, im] pairs; density
// matrices and witnesses carry explicit "dimA"/"dimB" fields.

#include "bellcert/certify.hpp"
#include "bellcert/witness.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace bellcert::io {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json real_vector_to_json(const RealVector& v);
RealVector real_vector_from_json(const json& j);

json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const json& j);

json to_json(const EventLayout& layout);
EventLayout layout_from_json(const json& j);

json to_json(const MeasurementConfig& config);
MeasurementConfig config_from_json(const json& j);

json to_json(const EventVector& p);
EventVector event_vector_from_json(const json& j);

/// {"F", "layout", "violation", "min_generator_value", "config"?}
json to_json(const FarkasCertificate& cert, const MeasurementConfig* config);

struct CertificateDocument {
  FarkasCertificate certificate;
  std::optional<MeasurementConfig> config;
};

/// Accepts a bare certificate document or any document with a "certificate" member.
CertificateDocument certificate_from_json(const json& j);

json to_json(const Witness& w);
Witness witness_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace bellcert::io

#endif  // BELLCERT_IO_HPP
