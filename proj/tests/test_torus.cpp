#include <doctest.h>

#include <cmath>

#include "core/catalog.hpp"
#include "core/spectral.hpp"
#include "core/torus.hpp"

using namespace gridohm;

namespace {
// Ring of N cells of a two-resistor chain: the two arcs between the endpoints
// act in parallel.
double ring_same_site(double r1, double r2, int cells, int m) {
  const double arc = (r1 + r2) * std::abs(m);
  const double total = (r1 + r2) * cells;
  return arc * (total - arc) / total;
}
}  // namespace

TEST_CASE("4x4 square torus, adjacent sites: exactly 15/32") {
  const LatticeSpec& sq = builtin("square").spec;
  const ResistanceQuery q{0, 0, {1, 0}};
  const TorusConfig t{{4, 4}};
  CHECK(torus_resistance_kspace(sq, q, t) == doctest::Approx(15.0 / 32.0).epsilon(1e-14));
  CHECK(torus_resistance_realspace(sq, q, t) == doctest::Approx(15.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("chain rings match the two-arc closed form") {
  const LatticeSpec uniform = chain2(1.0, 1.0);
  // Ring of 4 cells (8 unit resistors), adjacent sites: 1 || 7.
  CHECK(torus_resistance_kspace(uniform, {0, 1, {0}}, {{4}}) ==
        doctest::Approx(7.0 / 8.0).epsilon(1e-14));

  const LatticeSpec chain = chain2(2.0, 3.0);
  for (int n : {8, 16, 32}) {
    CAPTURE(n);
    CHECK(torus_resistance_kspace(chain, {0, 0, {2}}, {{n}}) ==
          doctest::Approx(ring_same_site(2.0, 3.0, n, 2)).epsilon(1e-13));
    CHECK(torus_resistance_realspace(chain, {0, 0, {2}}, {{n}}) ==
          doctest::Approx(ring_same_site(2.0, 3.0, n, 2)).epsilon(1e-12));
  }
}

TEST_CASE("k-space and real-space routes agree on multi-site lattices") {
  struct Row {
    const char* name;
    ResistanceQuery q;
    TorusConfig t;
  };
  const Row rows[] = {
      {"kagome", {0, 2, {1, 0}}, {{6, 6}}},
      {"snub-square", {0, 5, {0, 0}}, {{4, 4}}},
      {"square-octagon", {2, 0, {1, 0}}, {{6, 6}}},
      {"bcc", {0, 1, {0, 0, 0}}, {{4, 4, 4}}},
      {"honeycomb", {0, 1, {0, 0}}, {{8, 8}}},
  };
  for (const Row& r : rows) {
    CAPTURE(r.name);
    const LatticeSpec& spec = builtin(r.name).spec;
    const double k = torus_resistance_kspace(spec, r.q, r.t);
    const double x = torus_resistance_realspace(spec, r.q, r.t);
    CHECK(k == doctest::Approx(x).epsilon(1e-10));
  }
}

TEST_CASE("real-space answer does not depend on the grounded node") {
  const LatticeSpec& kag = builtin("kagome").spec;
  const ResistanceQuery q{0, 1, {1, 0}};
  const TorusConfig t{{6, 6}};
  const double v0 = torus_resistance_realspace(kag, q, t, 0);
  const double v17 = torus_resistance_realspace(kag, q, t, 17);
  const double vlast = torus_resistance_realspace(kag, q, t, 6 * 6 * 3 - 1);
  CHECK(v0 == doctest::Approx(v17).epsilon(1e-10));
  CHECK(v0 == doctest::Approx(vlast).epsilon(1e-10));
}

TEST_CASE("offsets wrap around the torus") {
  const LatticeSpec& sq = builtin("square").spec;
  const TorusConfig t{{8, 8}};
  const double a = torus_resistance_kspace(sq, {0, 0, {1, 0}}, t);
  const double b = torus_resistance_kspace(sq, {0, 0, {9, 0}}, t);
  const double c = torus_resistance_kspace(sq, {0, 0, {-7, 0}}, t);
  CHECK(a == doctest::Approx(b).epsilon(1e-14));
  CHECK(a == doctest::Approx(c).epsilon(1e-14));
}

TEST_CASE("torus sizes must be even and at least 2") {
  const LatticeSpec& sq = builtin("square").spec;
  const ResistanceQuery q{0, 0, {1, 0}};
  for (const TorusConfig& bad : {TorusConfig{{5, 4}}, TorusConfig{{0, 4}}, TorusConfig{{4}},
                                 TorusConfig{{4, -4}}}) {
    CHECK_THROWS_AS(torus_resistance_kspace(sq, q, bad), Error);
    CHECK_THROWS_AS(torus_resistance_realspace(sq, q, bad), Error);
  }
}

TEST_CASE("torus values climb toward the infinite-lattice resistance") {
  const LatticeSpec& sq = builtin("square").spec;
  const ResistanceQuery q{0, 0, {1, 0}};
  const auto rows = convergence_to_infinite(
      sq, q, {TorusConfig{{4, 4}}, TorusConfig{{8, 8}}, TorusConfig{{16, 16}}});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].first == 4);
  CHECK(rows[2].first == 16);
  const double exact = 0.5;
  CHECK(std::abs(rows[1].second - exact) < std::abs(rows[0].second - exact));
  CHECK(std::abs(rows[2].second - exact) < std::abs(rows[1].second - exact));
  CHECK(rows[2].second == doctest::Approx(exact).epsilon(1e-2));
}
