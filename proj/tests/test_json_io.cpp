#include <doctest.h>

#include <limits>
#include <string>

#include "core/json_io.hpp"
#include "core/lattice.hpp"

using namespace gridohm;

namespace {
const std::string kData = GRIDOHM_TEST_DATA_DIR;

Errc code_of(const std::string& text) {
  try {
    lattice_from_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ok;
}
}  // namespace

TEST_CASE("lattice documents parse into canonical specs") {
  const std::string text = R"({
    "format": 1,
    "dimension": 2,
    "sites": ["u", "v"],
    "bonds": [
      {"from": "v", "to": "u", "offset": [1, 0]},
      {"from": "u", "to": "v", "offset": [0, 0], "resistance": 0.5},
      {"from": "u", "to": "u", "offset": [0, 1]}
    ]
  })";
  const LatticeSpec s = lattice_from_json(text);
  CHECK(s.dimension == 2);
  CHECK(s.sites == std::vector<std::string>{"u", "v"});
  REQUIRE(s.bonds.size() == 3);
  // Canonicalized: (v,u,(1,0)) became (u,v,(-1,0)); default resistance is 1.
  CHECK(s.bonds[1].offset == Offset{-1, 0});
  CHECK(s.bonds[1].resistance == doctest::Approx(1.0));
  CHECK(s.bonds[2].resistance == doctest::Approx(0.5));
}

TEST_CASE("serialization round-trips byte-identically") {
  const LatticeSpec s = lattice_from_file(kData + "/ladder.json");
  const std::string once = lattice_to_json(s);
  const std::string twice = lattice_to_json(lattice_from_json(once));
  CHECK(once == twice);
  CHECK(once.back() == '\n');
  CHECK(once.find("\"format\": 1") != std::string::npos);
}

TEST_CASE("parse errors carry the right code") {
  CHECK(code_of("not json at all") == Errc::parse_error);
  CHECK(code_of("[1,2,3]") == Errc::parse_error);
  CHECK(code_of(R"({"dimension":1,"sites":["a"],"bonds":[]})") == Errc::parse_error);
  CHECK(code_of(R"({"format":2,"dimension":1,"sites":["a"],"bonds":[]})") == Errc::parse_error);
  CHECK(code_of(R"({"format":1,"sites":["a"],"bonds":[]})") == Errc::parse_error);
  CHECK(code_of(R"({"format":1,"dimension":1,"sites":"a","bonds":[]})") == Errc::parse_error);
  CHECK(code_of(R"({"format":1,"dimension":1,"sites":["a"],"bonds":[{"from":"a","to":"a"}]})") ==
        Errc::parse_error);
  CHECK(code_of(
            R"({"format":1,"dimension":1,"sites":["a"],"bonds":[{"from":"a","to":"a","offset":[1.5]}]})") ==
        Errc::parse_error);
  // Unknown endpoints are a site error, not a syntax error.
  CHECK(code_of(
            R"({"format":1,"dimension":1,"sites":["a"],"bonds":[{"from":"a","to":"b","offset":[1]}]})") ==
        Errc::unknown_site);
}

TEST_CASE("file loading distinguishes io from parse and validation errors") {
  try {
    lattice_from_file(kData + "/does_not_exist.json");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io_error);
  }
  try {
    lattice_from_file(kData + "/bad_format.json");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::parse_error);
  }
  try {
    lattice_from_file(kData + "/split_rails.json");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::disconnected_lattice);
  }
}

TEST_CASE("round12 clamps to 12 significant digits") {
  CHECK(round12(0.0) == 0.0);
  CHECK(round12(1.0 / 3.0) == 0.333333333333);
  CHECK(round12(-1.0 / 3.0) == -0.333333333333);
  CHECK(round12(123456789012345.0) == 123456789012000.0);
  CHECK(round12(0.5) == 0.5);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(round12(inf) == inf);
}
