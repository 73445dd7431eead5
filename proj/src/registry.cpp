#include "bellcert/registry.hpp"

#include "bellcert/io.hpp"
#include "bellcert/states.hpp"
#include "bellcert/witness.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bellcert::registry {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

std::uint64_t parse_uint(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("not an unsigned integer: '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::vector<std::uint64_t> parse_uints(const std::string& s, std::size_t expected, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != expected) throw std::invalid_argument(what + ": expected " + std::to_string(expected) + " comma-separated values");
  std::vector<std::uint64_t> out;
  for (const auto& p : parts) out.push_back(parse_uint(p));
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

DensityMatrix resolve_state(const std::string& name) {
  if (name == "singlet") return singlet();
  if (name == "tiles") return tiles_upb_state();
  if (starts_with(name, "werner:p=")) return werner(parse_double(name.substr(9)));
  if (starts_with(name, "maxmixed:")) {
    const auto v = parse_uints(name.substr(9), 2, "maxmixed");
    return maximally_mixed({v[0], v[1]});
  }
  if (starts_with(name, "separable:")) {
    const auto v = parse_uints(name.substr(10), 4, "separable");
    return random_separable({v[0], v[1]}, v[2], v[3]).first;
  }
  if (starts_with(name, "random:")) {
    const auto v = parse_uints(name.substr(7), 3, "random");
    return random_density({v[0], v[1]}, v[2]);
  }
  const auto j = io::read_json_file(name);
  return io::density_from_json(j.contains("state") ? j.at("state") : j);
}

MeasurementConfig zx_trine_config() {
  std::vector<HermitianOperator> trine;
  for (int k = 0; k < 3; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 3.0;
    const Eigen::Vector3d n(std::sin(angle), 0.0, std::cos(angle));
    trine.emplace_back(ComplexMatrix((ComplexMatrix::Identity(2, 2) + bloch_operator(n)) / 3.0));
  }
  return MeasurementConfig({projective_from_bloch({0.0, 0.0, 1.0}), projective_from_bloch({1.0, 0.0, 0.0})},
                           {validate_povm(std::move(trine))});
}

MeasurementConfig resolve_config(const std::string& name) {
  if (name == "chsh-canonical") return chsh_config(ChshSettings::canonical());
  if (name == "zx-trine") return zx_trine_config();
  if (starts_with(name, "complete:")) {
    const auto v = parse_uints(name.substr(9), 2, "complete");
    return complete_config(v[0], v[1]);
  }
  const auto j = io::read_json_file(name);
  return io::config_from_json(j.contains("config") ? j.at("config") : j);
}

SearchShape parse_shape(const std::string& text) {
  const auto sides = split(text, ',');
  if (sides.size() != 2) throw std::invalid_argument("shape: expected '<nA>x<kA>,<nB>x<kB>'");
  auto side = [](const std::string& s) {
    const auto parts = split(s, 'x');
    if (parts.size() != 2) throw std::invalid_argument("shape: expected '<measurements>x<outcomes>'");
    return std::pair{parse_uint(parts[0]), parse_uint(parts[1])};
  };
  const auto [na, ka] = side(sides[0]);
  const auto [nb, kb] = side(sides[1]);
  return {na, ka, nb, kb};
}

std::vector<std::string> state_names() {
  return {"singlet", "werner:p=<x>", "tiles", "maxmixed:<dA>,<dB>", "separable:<dA>,<dB>,<terms>,<seed>",
          "random:<dA>,<dB>,<seed>"};
}

std::vector<std::string> config_names() { return {"chsh-canonical", "complete:<dA>,<dB>", "zx-trine"}; }

}  // namespace bellcert::registry
