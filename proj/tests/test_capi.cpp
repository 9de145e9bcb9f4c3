#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include <gridohm/gridohm.h>
#include <json.hpp>

namespace {
const std::string kData = GRIDOHM_TEST_DATA_DIR;

struct Lat {
  gridohm_lattice* p = nullptr;
  ~Lat() { gridohm_lattice_free(p); }
};

struct Str {
  char* p = nullptr;
  ~Str() { gridohm_string_free(p); }
};
}  // namespace

TEST_CASE("version and default configuration") {
  CHECK(std::strcmp(gridohm_version(), "1.0.0") == 0);
  const gridohm_quadrature_config cfg = gridohm_quadrature_config_default();
  CHECK(cfg.order == 0);
  CHECK(cfg.max_refinements == 3);
  CHECK(cfg.target_rel_error == 1e-5);
  CHECK(cfg.threads == 0);
}

TEST_CASE("lattice lifecycle and inspection") {
  Lat lat;
  REQUIRE(gridohm_lattice_builtin("kagome", &lat.p) == GRIDOHM_OK);
  CHECK(gridohm_lattice_dimension(lat.p) == 2);
  CHECK(gridohm_lattice_site_count(lat.p) == 3);
  CHECK(std::strcmp(gridohm_lattice_site_name(lat.p, 0), "1") == 0);
  CHECK(gridohm_lattice_site_name(lat.p, 3) == nullptr);
  CHECK(gridohm_lattice_site_name(nullptr, 0) == nullptr);
  int idx = -1;
  CHECK(gridohm_lattice_site_index(lat.p, "2", &idx) == GRIDOHM_OK);
  CHECK(idx == 1);
  CHECK(gridohm_lattice_site_index(lat.p, "9", &idx) == GRIDOHM_ERR_UNKNOWN_SITE);
  double deg = 0.0;
  CHECK(gridohm_weighted_degree(lat.p, 0, &deg) == GRIDOHM_OK);
  CHECK(deg == doctest::Approx(4.0));
  CHECK(gridohm_weighted_degree(lat.p, 7, &deg) == GRIDOHM_ERR_UNKNOWN_SITE);
}

TEST_CASE("errors set a status and a per-thread message") {
  Lat lat;
  CHECK(gridohm_lattice_builtin("nope", &lat.p) == GRIDOHM_ERR_UNKNOWN_LATTICE);
  CHECK(std::string(gridohm_last_error()).find("nope") != std::string::npos);
  CHECK(gridohm_lattice_builtin(nullptr, &lat.p) == GRIDOHM_ERR_INVALID_ARGUMENT);
  CHECK(gridohm_lattice_from_json("{broken", &lat.p) == GRIDOHM_ERR_PARSE);
  CHECK(gridohm_lattice_from_file("/no/such/file.json", &lat.p) == GRIDOHM_ERR_IO);
  CHECK(gridohm_lattice_chain(-1.0, 1.0, &lat.p) == GRIDOHM_ERR_NON_POSITIVE_RESISTANCE);
}

TEST_CASE("document round trip through the C surface") {
  Lat a;
  REQUIRE(gridohm_lattice_from_file((kData + "/ladder.json").c_str(), &a.p) == GRIDOHM_OK);
  Str first;
  REQUIRE(gridohm_lattice_to_json(a.p, &first.p) == GRIDOHM_OK);
  Lat b;
  REQUIRE(gridohm_lattice_from_json(first.p, &b.p) == GRIDOHM_OK);
  Str second;
  REQUIRE(gridohm_lattice_to_json(b.p, &second.p) == GRIDOHM_OK);
  CHECK(std::string(first.p) == second.p);
}

TEST_CASE("resistance, integrand and convergence study") {
  Lat sq;
  REQUIRE(gridohm_lattice_builtin("square", &sq.p) == GRIDOHM_OK);
  gridohm_quadrature_config cfg = gridohm_quadrature_config_default();
  cfg.order = 128;
  cfg.max_refinements = 1;

  const int adjacent[2] = {1, 0};
  gridohm_result r{};
  REQUIRE(gridohm_resistance(sq.p, 0, 0, adjacent, &cfg, &r) == GRIDOHM_OK);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.converged == 1);
  CHECK(r.evaluations > 0);

  // Null config means library defaults.
  const int zero[2] = {0, 0};
  REQUIRE(gridohm_resistance(sq.p, 0, 0, zero, nullptr, &r) == GRIDOHM_OK);
  CHECK(r.value == 0.0);

  const double x[2] = {std::numbers::pi, std::numbers::pi};
  double f = -1.0;
  REQUIRE(gridohm_resistance_integrand(sq.p, 0, 0, adjacent, x, &f) == GRIDOHM_OK);
  CHECK(f == doctest::Approx(0.5).epsilon(1e-12));  // |1-e^{-i pi}|^2 / 8

  // Triangular for the study: the square adjacent value is exact at every
  // order, which would leave nothing to compare.
  Lat tri;
  REQUIRE(gridohm_lattice_builtin("triangular", &tri.p) == GRIDOHM_OK);
  const int orders[3] = {16, 32, 64};
  double values[3] = {0, 0, 0};
  REQUIRE(gridohm_convergence_study(tri.p, 0, 0, adjacent, orders, 3, &cfg, values) ==
          GRIDOHM_OK);
  const double exact = 1.0 / 3.0;
  CHECK(std::abs(values[2] - exact) < std::abs(values[0] - exact));
}

TEST_CASE("a missed target reports no-convergence but fills the result") {
  Lat sq;
  REQUIRE(gridohm_lattice_builtin("square", &sq.p) == GRIDOHM_OK);
  gridohm_quadrature_config cfg = gridohm_quadrature_config_default();
  cfg.order = 64;
  cfg.max_refinements = 0;
  cfg.target_rel_error = 1e-12;
  const int adjacent[2] = {1, 0};
  gridohm_result r{};
  CHECK(gridohm_resistance(sq.p, 0, 0, adjacent, &cfg, &r) == GRIDOHM_ERR_NO_CONVERGENCE);
  CHECK(r.converged == 0);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("torus routes through the C surface") {
  Lat sq;
  REQUIRE(gridohm_lattice_builtin("square", &sq.p) == GRIDOHM_OK);
  const int adjacent[2] = {1, 0};
  const int sizes[2] = {4, 4};
  double v = 0.0;
  REQUIRE(gridohm_torus_resistance(sq.p, 0, 0, adjacent, sizes, 0, &v) == GRIDOHM_OK);
  CHECK(v == doctest::Approx(15.0 / 32.0).epsilon(1e-13));
  REQUIRE(gridohm_torus_resistance(sq.p, 0, 0, adjacent, sizes, 1, &v) == GRIDOHM_OK);
  CHECK(v == doctest::Approx(15.0 / 32.0).epsilon(1e-12));
  CHECK(gridohm_torus_resistance(sq.p, 0, 0, adjacent, sizes, 2, &v) ==
        GRIDOHM_ERR_INVALID_ARGUMENT);
  const int odd[2] = {5, 4};
  CHECK(gridohm_torus_resistance(sq.p, 0, 0, adjacent, odd, 0, &v) ==
        GRIDOHM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("chain, mapped and reference resistances") {
  double v = 0.0;
  REQUIRE(gridohm_chain_resistance(2.0, 3.0, 0, 0, 2, &v) == GRIDOHM_OK);
  CHECK(v == 10.0);
  CHECK(gridohm_chain_resistance(0.0, 3.0, 0, 0, 2, &v) ==
        GRIDOHM_ERR_NON_POSITIVE_RESISTANCE);

  gridohm_quadrature_config cfg = gridohm_quadrature_config_default();
  cfg.order = 128;
  cfg.max_refinements = 1;

  gridohm_result r{};
  Str terms;
  REQUIRE(gridohm_mapped_resistance("kagome", 0, 1, 0, 0, &cfg, &r, &terms.p) == GRIDOHM_OK);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(r.error_estimate >= 0.0);
  const auto doc = nlohmann::json::parse(terms.p);
  CHECK(doc["reference"] == "triangular");
  CHECK(doc["terms"].is_array());
  CHECK(doc["terms"].size() >= 3);

  CHECK(gridohm_mapped_resistance("square", 0, 0, 1, 0, &cfg, &r, nullptr) ==
        GRIDOHM_ERR_UNKNOWN_LATTICE);

  REQUIRE(gridohm_reference_resistance("square", 1, 1, &cfg, &r) == GRIDOHM_OK);
  CHECK(r.value == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-4));
  CHECK(gridohm_reference_resistance("kagome", 1, 1, &cfg, &r) == GRIDOHM_ERR_UNKNOWN_LATTICE);
}

TEST_CASE("catalog document") {
  Str text;
  REQUIRE(gridohm_catalog_json(&text.p) == GRIDOHM_OK);
  const auto doc = nlohmann::json::parse(text.p);
  CHECK(doc["format"] == 1);
  REQUIRE(doc["lattices"].size() == 12);
  CHECK(doc["lattices"][0]["name"] == "chain2");
  CHECK(doc["lattices"][0]["dimension"] == 1);
}

TEST_CASE("verification suite runs through the C surface") {
  Str report;
  int failed = -1;
  REQUIRE(gridohm_verify("matrices", "default", 0, &report.p, &failed) == GRIDOHM_OK);
  CHECK(failed == 0);
  const auto doc = nlohmann::json::parse(report.p);
  CHECK(doc["format"] == 1);
  CHECK(doc["failed"] == 0);
  CHECK(doc["checks"].size() == 13);

  CHECK(gridohm_verify("no-such-group", "default", 0, &report.p, &failed) ==
        GRIDOHM_ERR_INVALID_ARGUMENT);
}
