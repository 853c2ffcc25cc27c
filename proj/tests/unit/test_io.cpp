#include "corpus.hpp"
#include "doctest.h"
#include "mclass/io/document.hpp"
#include "mclass/io/reports.hpp"

using namespace mclass;
using namespace mclass::testing;
using nlohmann::json;

TEST_CASE("sha256 known answers") {
  CHECK(io::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(io::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("matrix document parse") {
  const auto doc = io::parse_document(R"({"schema_version": "1", "x_weights": ["1/2", "1/2"],
      "y_weights": ["1"], "values": [["a"], [3]], "x_atoms": ["p", "q"]})");
  REQUIRE(doc.matrix);
  CHECK(doc.matrix->values() == std::vector<Label>{"a", "3"});
  CHECK(doc.matrix->x_space().atom_ids() == std::vector<std::string>{"p", "q"});
  CHECK(doc.matrix->y_space().atom_ids() == std::vector<std::string>{"0"});
  CHECK_FALSE(doc.numeric);
}

TEST_CASE("document errors carry the field") {
  const auto field_of = [](const char* text) {
    try {
      io::parse_document(text);
    } catch (const io::ParseError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of(R"({"schema_version": "1", "x_weights": ["1/2", "2/4"], "y_weights": ["1"], "values": [["0"], ["1"]]})") ==
        "x_weights[1]");
  CHECK(field_of(R"({"schema_version": "1", "x_weights": ["1"], "y_weights": ["1"], "values": [["0", "1"]]})") ==
        "values[0]");
  CHECK(field_of(R"({"schema_version": "2", "x_weights": ["1"], "y_weights": ["1"], "values": [["0"]]})") ==
        "schema_version");
  CHECK(field_of(R"({"schema_version": "1", "x_weights": ["1/2", "1/3"], "y_weights": ["1"], "values": [["0"], ["1"]]})") ==
        "x_weights");
  CHECK(field_of(R"({"schema_version": "1", "numeric": true, "x_weights": ["1"], "y_weights": ["1"], "values": [["2"]]})") ==
        "values[0][0]");
  try {
    io::parse_document("{\n\"schema_version\": \n");
    FAIL("expected a parse error");
  } catch (const io::ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("document round trip") {
  for (const auto& f : corpus(20)) {
    const std::string once = io::dump(io::to_json(f));
    const auto parsed = io::parse_document(once);
    REQUIRE(parsed.matrix);
    CHECK(*parsed.matrix == f);
    CHECK(io::dump(io::to_json(parsed)) == once);
  }
  const auto tensor = io::parse_document(
      R"({"schema_version": "1", "weights_per_axis": [["1"], ["1/2", "1/2"], ["1/3", "2/3"]], "shape": [1, 2, 2],
          "values": ["0", "1", "1", "0"]})");
  REQUIRE(tensor.tensor);
  CHECK(tensor.tensor->arity() == 3);
  const auto again = io::parse_document(io::dump(io::to_json(tensor)));
  REQUIRE(again.tensor);
  CHECK(again.tensor->values() == tensor.tensor->values());
  CHECK(io::dump(io::to_json(again)) == io::dump(io::to_json(tensor)));
  const auto two = io::parse_document(
      R"({"schema_version": "1", "weights_per_axis": [["1"], ["1/2", "1/2"]], "shape": [1, 2], "values": ["0", "1"]})");
  CHECK(two.matrix);
}

TEST_CASE("corner keys") {
  CHECK(io::corner_key({"0", "1", "1", "0"}, 2) == "0,1;1,0");
  CHECK(io::corner_key({"0"}, 1) == "0");
  CHECK(io::escape_label("a,b;c\\") == "a\\,b\\;c\\\\");
  const auto j = io::to_json(exact_corner_distribution(xor_uniform(), 2));
  CHECK(j["entries"]["0,1;1,0"] == "1/8");
  CHECK(j["k"] == 2);
}

TEST_CASE("reports are deterministic") {
  const auto f = f_star();
  const auto a = io::dump(io::envelope("reconstruct", {{"f", io::sha256_hex("x")}}, 7, json::object(),
                                       io::to_json(reconstruction_check(f, 300, 8, 7, Rational(1, 20)))));
  const auto b = io::dump(io::envelope("reconstruct", {{"f", io::sha256_hex("x")}}, 7, json::object(),
                                       io::to_json(reconstruction_check(f, 300, 8, 7, Rational(1, 20)))));
  CHECK(a == b);
  const auto e = json::parse(a);
  CHECK(e["tool_version"] == io::kToolVersion);
  CHECK(e["seed"] == 7);
  CHECK(e["result"]["weight_tv"].is_string());
}
