#include "mclass/io/reports.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

#include "mclass/io/document.hpp"

namespace mclass::io {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int size = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &size, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < size; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

json envelope(const std::string& command, const std::vector<InputDigest>& inputs,
              std::optional<std::uint64_t> seed, json parameters, json result) {
  json digests = json::array();
  for (const auto& in : inputs) digests.push_back({{"name", in.name}, {"sha256", in.sha256}});
  return {{"command", command},
          {"inputs", digests},
          {"seed", seed ? json(*seed) : json(nullptr)},
          {"parameters", std::move(parameters)},
          {"result", std::move(result)},
          {"tool_version", kToolVersion}};
}

json error_object(const std::string& kind, const std::string& message, json details) {
  json body = {{"kind", kind}, {"message", message}};
  for (auto& [key, value] : details.items()) body[key] = value;
  return {{"error", body}};
}

std::string escape_label(const Label& label) {
  std::string out;
  for (char c : label) {
    if (c == ',' || c == ';' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string corner_key(const std::vector<Label>& cells, std::size_t k) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += (k != 0 && i % k == 0) ? ';' : ',';
    out += escape_label(cells[i]);
  }
  return out;
}

json to_json(const CornerDistribution& d) {
  json entries = json::object();
  for (const auto& [cells, p] : d.entries) entries[corner_key(cells, d.k)] = format_rational(p);
  return {{"k", d.k}, {"entries", entries}};
}

json to_json(const TensorCornerDistribution& d) {
  json entries = json::object();
  for (const auto& [cells, p] : d.entries) entries[corner_key(cells, 0)] = format_rational(p);
  return {{"arity", d.arity}, {"k", d.k}, {"entries", entries}};
}

json to_json(const FactorMaps& maps) {
  return {{"row_projection", maps.row_projection}, {"col_projection", maps.col_projection}};
}

json to_json(const IsoWitness& w) { return {{"rows", w.rows}, {"cols", w.cols}}; }

json to_json(const SampledMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.n_rows; ++i) {
    rows.push_back(std::vector<Label>(m.values.begin() + static_cast<std::ptrdiff_t>(i * m.n_cols),
                                      m.values.begin() + static_cast<std::ptrdiff_t>((i + 1) * m.n_cols)));
  }
  return {{"n_rows", m.n_rows}, {"n_cols", m.n_cols}, {"seed", m.seed},
          {"row_atoms", m.row_atoms}, {"col_atoms", m.col_atoms}, {"values", rows}};
}

json to_json(const SampledTensor& t) {
  return {{"shape", t.shape}, {"seed", t.seed}, {"atoms", t.atoms}, {"values", t.values}};
}

json to_json(const ReconstructionReport& r) {
  json out = {{"reconstructed", to_json(r.reconstructed)},
              {"isomorphic_to_source", r.isomorphic_to_source},
              {"weight_tv", format_rational(r.weight_tv)},
              {"depth_used", r.depth_used}};
  out["matching"] = r.matching ? to_json(*r.matching) : json(nullptr);
  return out;
}

json to_json(const CongruenceGroup& g) {
  json elements = json::array();
  for (const auto& e : g.elements) elements.push_back({{"rows", e.rows}, {"cols", e.cols}});
  return {{"order", g.order()}, {"elements", elements}};
}

json to_json(const CollisionWitness& w) {
  return {{"first", {{"rows", w.first_rows}, {"cols", w.first_cols}}},
          {"second", {{"rows", w.second_rows}, {"cols", w.second_cols}}}};
}

json to_json(const SimplicityDiagnostic& d) {
  json violations = json::array();
  for (const auto& v : d.violations) {
    json reps = json::array();
    for (const auto& r : v.orbit_representatives) reps.push_back(corner_key(r, d.k));
    violations.push_back({{"row_multiset", v.row_multiset},
                          {"col_multiset", v.col_multiset},
                          {"orbit_representatives", reps}});
  }
  return {{"k", d.k},
          {"corners", d.corners},
          {"groups", d.groups},
          {"violations", violations},
          {"certifies_non_simple", d.certifies_non_simple},
          {"note", d.note}};
}

json to_json(const EmpiricalModel& m) {
  json rows = json::object();
  json cols = json::object();
  for (const auto& [p, w] : m.row_classes) rows[join_prefix(p)] = format_rational(w);
  for (const auto& [p, w] : m.col_classes) cols[join_prefix(p)] = format_rational(w);
  json joint = json::array();
  for (const auto& [key, cell] : m.joint) {
    json freq = json::object();
    for (const auto& [label, p] : cell.frequencies) freq[label] = format_rational(p);
    json entry = {{"row_class", join_prefix(key.first)},
                  {"col_class", join_prefix(key.second)},
                  {"mass", format_rational(cell.mass)},
                  {"frequencies", freq}};
    if (cell.measure) entry["measure"] = format_rational(*cell.measure);
    if (cell.density) entry["density"] = format_rational(*cell.density);
    joint.push_back(entry);
  }
  return {{"depth", m.depth}, {"row_classes", rows}, {"col_classes", cols}, {"joint", joint}};
}

}  // namespace mclass::io
