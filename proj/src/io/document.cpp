#include "mclass/io/document.hpp"

#include <algorithm>

namespace mclass::io {
namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field '" + key + "'", path + key);
  return *it;
}

std::string label_of(const json& v, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw ParseError("value labels must be strings or integers", path);
}

std::vector<Rational> weights_of(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw ParseError("expected an array of \"p/q\" strings", path);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = path + "[" + std::to_string(i) + "]";
    if (!arr[i].is_string()) throw ParseError("weights must be \"p/q\" strings", where);
    try {
      out.push_back(parse_rational(arr[i].get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), where);
    }
  }
  return out;
}

std::vector<std::string> ids_of(const json& doc, const std::string& key, std::size_t n) {
  std::vector<std::string> ids;
  const auto it = doc.find(key);
  if (it == doc.end()) {
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    return ids;
  }
  if (!it->is_array() || it->size() != n) {
    throw ParseError("expected " + std::to_string(n) + " atom ids", key);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(*it)[i].is_string()) throw ParseError("atom ids must be strings", key + "[" + std::to_string(i) + "]");
    ids.push_back((*it)[i].get<std::string>());
  }
  return ids;
}

FiniteMeasureSpace space_of(std::vector<std::string> ids, std::vector<Rational> weights,
                            const std::string& path) {
  try {
    return FiniteMeasureSpace(std::move(ids), std::move(weights));
  } catch (const InvalidMeasure& e) {
    throw ParseError(e.what(), path);
  }
}

// row_length 0 means flat tensor values.
void check_numeric(const std::vector<Label>& values, std::size_t row_length) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string field = row_length == 0 ? "values[" + std::to_string(i) + "]"
                                              : "values[" + std::to_string(i / row_length) + "][" +
                                                    std::to_string(i % row_length) + "]";
    Rational v;
    try {
      v = parse_rational(values[i], false);
    } catch (const std::invalid_argument&) {
      throw ParseError("numeric document has non-numeric label '" + values[i] + "'", field);
    }
    if (v < 0 || v > 1) throw ParseError("numeric labels must lie in [0,1]", field);
  }
}

json weights_json(const FiniteMeasureSpace& space) {
  json arr = json::array();
  for (const auto& w : space.weights()) arr.push_back(format_rational(w));
  return arr;
}

FiniteFunction parse_matrix(const json& doc) {
  const auto xw = weights_of(member(doc, "x_weights", ""), "x_weights");
  const auto yw = weights_of(member(doc, "y_weights", ""), "y_weights");
  const json& rows = member(doc, "values", "");
  if (!rows.is_array() || rows.size() != xw.size()) {
    throw ParseError("values must be an array of " + std::to_string(xw.size()) + " rows", "values");
  }
  std::vector<Label> values;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string row_path = "values[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != yw.size()) {
      throw ParseError("row must hold " + std::to_string(yw.size()) + " labels", row_path);
    }
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      values.push_back(label_of(rows[i][j], row_path + "[" + std::to_string(j) + "]"));
    }
  }
  return FiniteFunction(space_of(ids_of(doc, "x_atoms", xw.size()), xw, "x_weights"),
                        space_of(ids_of(doc, "y_atoms", yw.size()), yw, "y_weights"),
                        std::move(values));
}

TensorFunction parse_tensor(const json& doc) {
  const json& axes = member(doc, "weights_per_axis", "");
  const json& shape = member(doc, "shape", "");
  if (!axes.is_array() || axes.empty()) throw ParseError("expected a non-empty array of axes", "weights_per_axis");
  if (!shape.is_array() || shape.size() != axes.size()) {
    throw ParseError("shape must have one entry per axis", "shape");
  }
  const json* atoms = doc.contains("atoms_per_axis") ? &doc["atoms_per_axis"] : nullptr;
  if (atoms && (!atoms->is_array() || atoms->size() != axes.size())) {
    throw ParseError("atoms_per_axis must have one entry per axis", "atoms_per_axis");
  }
  std::vector<FiniteMeasureSpace> spaces;
  std::size_t cells = 1;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const std::string path = "weights_per_axis[" + std::to_string(a) + "]";
    auto w = weights_of(axes[a], path);
    if (!shape[a].is_number_unsigned() || shape[a].get<std::size_t>() != w.size()) {
      throw ParseError("shape entry does not match the axis weights", "shape[" + std::to_string(a) + "]");
    }
    std::vector<std::string> ids;
    if (atoms) {
      json wrapper = {{"ids", (*atoms)[a]}};
      ids = ids_of(wrapper, "ids", w.size());
    } else {
      for (std::size_t i = 0; i < w.size(); ++i) ids.push_back(std::to_string(i));
    }
    cells *= w.size();
    spaces.push_back(space_of(std::move(ids), std::move(w), path));
  }
  const json& flat = member(doc, "values", "");
  if (!flat.is_array() || flat.size() != cells) {
    throw ParseError("values must be a flat array of " + std::to_string(cells) + " labels", "values");
  }
  std::vector<Label> values;
  for (std::size_t i = 0; i < flat.size(); ++i) values.push_back(label_of(flat[i], "values[" + std::to_string(i) + "]"));
  return TensorFunction(std::move(spaces), std::move(values));
}

}  // namespace

const FiniteFunction& FunctionDocument::require_matrix() const {
  if (!matrix) throw ParseError("this command needs a two-variable document", "shape");
  return *matrix;
}

TensorFunction FunctionDocument::as_tensor() const {
  return matrix ? TensorFunction(*matrix) : *tensor;
}

FunctionDocument parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "", line_of(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object", "");
  FunctionDocument out;
  const json& version = member(doc, "schema_version", "");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
    throw ParseError(std::string("unsupported schema_version, expected \"") + kSchemaVersion + "\"",
                     "schema_version");
  }
  if (const auto it = doc.find("numeric"); it != doc.end()) {
    if (!it->is_boolean()) throw ParseError("numeric must be a boolean", "numeric");
    out.numeric = it->get<bool>();
  }
  if (doc.contains("weights_per_axis")) {
    TensorFunction t = parse_tensor(doc);
    if (out.numeric) check_numeric(t.values(), t.arity() == 2 ? t.shape()[1] : 0);
    if (t.arity() == 2) {
      out.matrix = FiniteFunction(t.axes()[0], t.axes()[1], t.values());
    } else {
      out.tensor = std::move(t);
    }
  } else {
    out.matrix = parse_matrix(doc);
    if (out.numeric) check_numeric(out.matrix->values(), out.matrix->cols());
  }
  return out;
}

json to_json(const FiniteFunction& f, bool numeric) {
  json rows = json::array();
  for (std::size_t i = 0; i < f.rows(); ++i) rows.push_back(json(std::vector<Label>(f.row(i).begin(), f.row(i).end())));
  json doc = {{"schema_version", kSchemaVersion},
              {"x_atoms", f.x_space().atom_ids()},
              {"y_atoms", f.y_space().atom_ids()},
              {"x_weights", weights_json(f.x_space())},
              {"y_weights", weights_json(f.y_space())},
              {"values", rows}};
  if (numeric) doc["numeric"] = true;
  return doc;
}

json to_json(const TensorFunction& f, bool numeric) {
  json axes = json::array();
  json atoms = json::array();
  for (const auto& a : f.axes()) {
    axes.push_back(weights_json(a));
    atoms.push_back(a.atom_ids());
  }
  json doc = {{"schema_version", kSchemaVersion},
              {"shape", f.shape()},
              {"weights_per_axis", axes},
              {"atoms_per_axis", atoms},
              {"values", f.values()}};
  if (numeric) doc["numeric"] = true;
  return doc;
}

json to_json(const FunctionDocument& doc) {
  return doc.matrix ? to_json(*doc.matrix, doc.numeric) : to_json(*doc.tensor, doc.numeric);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace mclass::io
