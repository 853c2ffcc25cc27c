#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "mclass/errors.hpp"
#include "mclass/finite_function.hpp"
#include "mclass/matrix_distribution.hpp"

namespace mclass::io {

inline constexpr const char* kSchemaVersion = "1";

/// Malformed input document. `field` is a JSON-path-like location
/// ("values[1][0]"), `line` is 1-based when the JSON itself failed to parse.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::string field, std::size_t line = 0)
      : Error(std::move(message)), field_(std::move(field)), line_(line) {}
  const char* kind() const noexcept override { return "ParseError"; }
  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string field_;
  std::size_t line_;
};

/// A function description: either a two-variable matrix or an n-ary tensor.
struct FunctionDocument {
  std::string schema_version = kSchemaVersion;
  bool numeric = false;
  std::optional<FiniteFunction> matrix;
  std::optional<TensorFunction> tensor;

  const FiniteFunction& require_matrix() const;
  TensorFunction as_tensor() const;
};

FunctionDocument parse_document(std::string_view text);

nlohmann::json to_json(const FiniteFunction& f, bool numeric = false);
nlohmann::json to_json(const TensorFunction& f, bool numeric = false);
nlohmann::json to_json(const FunctionDocument& doc);

/// Two-space indented JSON with sorted keys and a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace mclass::io
