#include "bellcert/io.hpp"

#include <fstream>
#include <stdexcept>

namespace bellcert::io {

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw std::invalid_argument("matrix: rows differ in length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row.at(static_cast<std::size_t>(c));
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      } else {
        throw std::invalid_argument("matrix: entries must be [re, im] pairs");
      }
    }
  }
  if (!m.allFinite()) throw std::invalid_argument("matrix: non-finite entry");
  return m;
}

json real_vector_to_json(const RealVector& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

RealVector real_vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json to_json(const DensityMatrix& rho) {
  return {{"dimA", rho.dims().a}, {"dimB", rho.dims().b}, {"matrix", matrix_to_json(rho.matrix())}};
}

DensityMatrix density_from_json(const json& j) {
  const BipartiteDims dims{j.at("dimA").get<std::size_t>(), j.at("dimB").get<std::size_t>()};
  return DensityMatrix(dims, matrix_from_json(j.at("matrix")));
}

json to_json(const EventLayout& layout) {
  return {{"alice_outcomes", layout.alice_outcomes},
          {"bob_outcomes", layout.bob_outcomes},
          {"joint_order", "i,k,j,l"},
          {"size", layout.size()}};
}

EventLayout layout_from_json(const json& j) {
  return {j.at("alice_outcomes").get<std::vector<std::size_t>>(), j.at("bob_outcomes").get<std::vector<std::size_t>>()};
}

namespace {

json side_to_json(const std::vector<POVM>& side) {
  json out = json::array();
  for (const auto& m : side) {
    json elements = json::array();
    for (const auto& e : m.elements()) elements.push_back(matrix_to_json(e.matrix()));
    out.push_back(std::move(elements));
  }
  return out;
}

std::vector<POVM> side_from_json(const json& j) {
  std::vector<POVM> side;
  for (const auto& m : j) {
    std::vector<HermitianOperator> elements;
    for (const auto& e : m) elements.emplace_back(matrix_from_json(e));
    side.push_back(validate_povm(std::move(elements)));
  }
  return side;
}

}  // namespace

json to_json(const MeasurementConfig& config) {
  return {{"alice", side_to_json(config.alice())}, {"bob", side_to_json(config.bob())}};
}

MeasurementConfig config_from_json(const json& j) {
  return MeasurementConfig(side_from_json(j.at("alice")), side_from_json(j.at("bob")));
}

json to_json(const EventVector& p) {
  return {{"joint", real_vector_to_json(p.joint())},
          {"margA", real_vector_to_json(p.marg_a())},
          {"margB", real_vector_to_json(p.marg_b())},
          {"layout", to_json(p.layout)}};
}

EventVector event_vector_from_json(const json& j) {
  EventVector p{layout_from_json(j.at("layout")), {}};
  const RealVector joint = real_vector_from_json(j.at("joint"));
  const RealVector ma = real_vector_from_json(j.at("margA"));
  const RealVector mb = real_vector_from_json(j.at("margB"));
  if (static_cast<std::size_t>(joint.size()) != p.layout.joint_size() ||
      static_cast<std::size_t>(ma.size()) != p.layout.bits_a() || static_cast<std::size_t>(mb.size()) != p.layout.bits_b()) {
    throw DimensionMismatch("event vector: block sizes do not match layout");
  }
  p.values.resize(static_cast<Eigen::Index>(p.layout.size()));
  p.values << joint, ma, mb;
  return p;
}

json to_json(const FarkasCertificate& cert, const MeasurementConfig* config) {
  json j = {{"F", real_vector_to_json(cert.f)},
            {"layout", to_json(cert.layout)},
            {"violation", cert.violation},
            {"min_generator_value", cert.min_generator_value}};
  if (config != nullptr) j["config"] = to_json(*config);
  return j;
}

CertificateDocument certificate_from_json(const json& j) {
  const json& c = j.contains("certificate") ? j.at("certificate") : j;
  CertificateDocument doc{{layout_from_json(c.at("layout")), real_vector_from_json(c.at("F")),
                           c.value("violation", 0.0), c.value("min_generator_value", 0.0)},
                          std::nullopt};
  if (static_cast<std::size_t>(doc.certificate.f.size()) != doc.certificate.layout.size()) {
    throw DimensionMismatch("certificate: F does not match its layout");
  }
  if (c.contains("config")) {
    doc.config = config_from_json(c.at("config"));
    if (!(doc.config->layout() == doc.certificate.layout)) {
      throw DimensionMismatch("certificate: configuration does not match layout");
    }
  }
  return doc;
}

namespace {

json vec3(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

Eigen::Vector3d vec3_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 3) throw std::invalid_argument("expected a 3-vector");
  return {v[0], v[1], v[2]};
}

}  // namespace

json to_json(const Witness& w) {
  json prov;
  if (const auto* f = std::get_if<FarkasProvenance>(&w.provenance)) {
    prov = {{"type", "farkas"}, {"F", real_vector_to_json(f->f)}, {"config", to_json(f->config)}};
  } else if (const auto* s = std::get_if<ChshSettings>(&w.provenance)) {
    prov = {{"type", "chsh"}, {"a", vec3(s->a)}, {"a_prime", vec3(s->a_prime)}, {"b", vec3(s->b)}, {"b_prime", vec3(s->b_prime)}};
  } else {
    prov = {{"type", "external"}};
  }
  return {{"H", matrix_to_json(w.h.matrix())}, {"dimA", w.dims.a}, {"dimB", w.dims.b}, {"c", w.offset}, {"provenance", prov}};
}

Witness witness_from_json(const json& j) {
  Witness w{HermitianOperator(matrix_from_json(j.at("H"))),
            {j.at("dimA").get<std::size_t>(), j.at("dimB").get<std::size_t>()},
            j.value("c", 0.0),
            ExternalProvenance{}};
  if (w.h.dim() != w.dims.total()) throw DimensionMismatch("witness: H does not match dimA * dimB");
  if (j.contains("provenance")) {
    const json& p = j.at("provenance");
    const std::string type = p.value("type", "external");
    if (type == "farkas") {
      w.provenance = FarkasProvenance{real_vector_from_json(p.at("F")), config_from_json(p.at("config"))};
    } else if (type == "chsh") {
      w.provenance = ChshSettings{vec3_from(p.at("a")), vec3_from(p.at("a_prime")), vec3_from(p.at("b")), vec3_from(p.at("b_prime"))};
    }
  }
  return w;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace bellcert::io
