#ifndef BELLCERT_REGISTRY_HPP
#define BELLCERT_REGISTRY_HPP

// Named states and configurations for scripting, plus the path fallback.
//
// States:   singlet | werner:p=<x> | tiles | maxmixed:<dA>,<dB>
//           | separable:<dA>,<dB>,<terms>,<seed> | random:<dA>,<dB>,<seed> | <file.json>
// Configs:  chsh-canonical | complete:<dA>,<dB> | zx-trine | <file.json>
// Shapes:   <nA>x<kA>,<nB>x<kB>   (measurements x outcomes per side)
//
// A file may hold the bare object or a document with a "state" / "config" member, so
// the output of `state show` and `config show` can be fed back in.

#include "bellcert/certify.hpp"

#include <string>
#include <vector>

namespace bellcert::registry {

DensityMatrix resolve_state(const std::string& name);
MeasurementConfig resolve_config(const std::string& name);
SearchShape parse_shape(const std::string& text);

/// Alice measures sigma_z then sigma_x; Bob performs one three-outcome trine POVM on a
/// qubit. Event vectors have 12 + 4 + 3 entries.
MeasurementConfig zx_trine_config();

std::vector<std::string> state_names();
std::vector<std::string> config_names();

}  // namespace bellcert::registry

#endif  // BELLCERT_REGISTRY_HPP
