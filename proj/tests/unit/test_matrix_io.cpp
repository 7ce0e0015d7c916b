#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "qim/matrix_io.hpp"

using namespace qim;

TEST_CASE("parse a two-block matrix") {
  const auto doc = nlohmann::json::parse(
      R"({"shape":[2,1],"blocks":[[[[1,0],[0,1]],[[0,-1],[2,0]]],[[[3,0]]]]})");
  const Hermitian h = parse_matrix(doc);
  CHECK(h.shape() == BlockShape({2, 1}));
  CHECK(h.block(0)(0, 1) == Complex(0, 1));
  CHECK(h.block(1)(0, 0) == Complex(3, 0));
  CHECK(distance(parse_matrix(matrix_json(h)), h) == 0.0);
}

TEST_CASE("diagnostics name the offending field") {
  const auto bad = nlohmann::json::parse(R"({"shape":[2],"blocks":[[[[1,0],[0,0]],[[0,0],["x",0]]]]})");
  try {
    parse_matrix(bad);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.field() == "blocks[0][1][1][0]");
  }
  CHECK_THROWS_AS(parse_matrix(nlohmann::json::parse(R"({"blocks":[]})")), FormatError);
}

TEST_CASE("document formatting keeps full precision and infinities") {
  const std::string s = format_document({{"x", 0.1}, {"y", "inf"}});
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"inf\"") != std::string::npos);
}
