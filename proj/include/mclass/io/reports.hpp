#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mclass/matrix_distribution.hpp"
#include "mclass/reconstruction.hpp"
#include "mclass/sampling.hpp"
#include "mclass/symmetry.hpp"

namespace mclass::io {

inline constexpr const char* kToolVersion = "0.1.0";

std::string sha256_hex(std::string_view bytes);

struct InputDigest {
  std::string name;
  std::string sha256;
};

/// {command, inputs, seed, parameters, result, tool_version}. Keys are sorted,
/// so equal arguments give byte-identical dumps.
nlohmann::json envelope(const std::string& command, const std::vector<InputDigest>& inputs,
                        std::optional<std::uint64_t> seed, nlohmann::json parameters,
                        nlohmann::json result);

/// {"error": {"kind", "message", ...}}
nlohmann::json error_object(const std::string& kind, const std::string& message,
                            nlohmann::json details = nlohmann::json::object());

/// "0,1;1,0": cells separated by ',', rows by ';'. Backslash escapes ',', ';'
/// and '\' inside labels.
std::string corner_key(const std::vector<Label>& cells, std::size_t k);
std::string escape_label(const Label& label);

nlohmann::json to_json(const CornerDistribution& d);
nlohmann::json to_json(const TensorCornerDistribution& d);
nlohmann::json to_json(const FactorMaps& maps);
nlohmann::json to_json(const IsoWitness& w);
nlohmann::json to_json(const SampledMatrix& m);
nlohmann::json to_json(const SampledTensor& t);
nlohmann::json to_json(const ReconstructionReport& r);
nlohmann::json to_json(const CongruenceGroup& g);
nlohmann::json to_json(const CollisionWitness& w);
nlohmann::json to_json(const SimplicityDiagnostic& d);
nlohmann::json to_json(const EmpiricalModel& m);

}  // namespace mclass::io
