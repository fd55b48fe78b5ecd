#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "ramseylab/report.hpp"

using namespace ramseylab;
using nlohmann::json;

TEST_CASE("canonical JSON sorts keys and pins the float format") {
  json j;
  j["zeta"] = 1;
  j["alpha"] = json::object();
  j["alpha"]["b"] = 0.5;
  j["alpha"]["a"] = true;
  j["mid"] = json::array({1, "two", 3.0});

  const std::string text = canonical_json(j);
  CHECK(text.find("\"alpha\"") < text.find("\"mid\""));
  CHECK(text.find("\"mid\"") < text.find("\"zeta\""));
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(text.find("0.500000000") != std::string::npos);
  CHECK(text.find("3.000000000") != std::string::npos);
  CHECK(text.back() == '\n');

  // Byte-stable across repeated rendering.
  CHECK(canonical_json(j) == text);
}

TEST_CASE("non-finite numbers render as quoted inf strings") {
  json j;
  j["up"] = std::numeric_limits<double>::infinity();
  j["down"] = -std::numeric_limits<double>::infinity();
  const std::string text = canonical_json(j);
  CHECK(text.find("\"inf\"") != std::string::npos);
  CHECK(text.find("\"-inf\"") != std::string::npos);
}

TEST_CASE("strings are escaped, control characters included") {
  json j;
  j["key"] = "line\nbreak\tand \"quotes\" and \x01";
  const std::string text = canonical_json(j);
  CHECK(text.find("\\n") != std::string::npos);
  CHECK(text.find("\\t") != std::string::npos);
  CHECK(text.find("\\\"quotes\\\"") != std::string::npos);
  CHECK(text.find("\\u0001") != std::string::npos);
}

TEST_CASE("the TSV projection flattens dotted paths in key order") {
  json j;
  j["b"] = json::object({{"y", 2}, {"x", 1}});
  j["a"] = json::array({true, "s"});
  j["c"] = 0.25;
  const std::string tsv = flat_tsv(j);
  CHECK(tsv ==
        "a.0\ttrue\n"
        "a.1\ts\n"
        "b.x\t1\n"
        "b.y\t2\n"
        "c\t0.250000000\n");
}

TEST_CASE("tables render as header plus rows") {
  Table t;
  t.header = {"object", "value"};
  t.rows = {{"A", "2"}, {"B", "1"}};
  CHECK(render_tsv(t) == "object\tvalue\nA\t2\nB\t1\n");
}

TEST_CASE("the 64-bit FNV-1a reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
  CHECK(fnv1a_hex(std::string(1, '\0')) != fnv1a_hex(""));
}
