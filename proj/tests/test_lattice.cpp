#include <doctest.h>

#include "core/lattice.hpp"

using namespace gridohm;

namespace {

LatticeSpec raw_square() {
  LatticeSpec s;
  s.dimension = 2;
  s.sites = {"1"};
  s.bonds = {{0, 0, {1, 0}, 1.0}, {0, 0, {0, 1}, 1.0}};
  return s;
}

bool same_bonds(const LatticeSpec& a, const LatticeSpec& b) {
  if (a.bonds.size() != b.bonds.size()) return false;
  for (std::size_t i = 0; i < a.bonds.size(); ++i) {
    const Bond &x = a.bonds[i], &y = b.bonds[i];
    if (x.from != y.from || x.to != y.to || x.offset != y.offset ||
        x.resistance != y.resistance)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("canonical form orients, merges and sorts bonds") {
  LatticeSpec s;
  s.dimension = 2;
  s.sites = {"a", "b"};
  s.bonds = {
      {1, 0, {1, 0}, 2.0},    // reversed: becomes (0,1,(-1,0))
      {0, 0, {-1, 0}, 1.0},   // self-bond flipped to (1,0)
      {0, 1, {0, 0}, 4.0},    // parallel pair with the next one
      {0, 1, {0, 0}, 4.0},    // merges to resistance 2
      {0, 0, {0, 1}, 1.0},
  };
  const LatticeSpec c = validate_and_canonicalize(s);
  REQUIRE(c.bonds.size() == 4);
  CHECK(c.bonds[0].from == 0);
  CHECK(c.bonds[0].to == 0);
  CHECK(c.bonds[0].offset == Offset{0, 1});
  CHECK(c.bonds[1].offset == Offset{1, 0});
  CHECK(c.bonds[2].offset == Offset{-1, 0});
  CHECK(c.bonds[2].to == 1);
  CHECK(c.bonds[2].resistance == doctest::Approx(2.0));
  CHECK(c.bonds[3].offset == Offset{0, 0});
  CHECK(c.bonds[3].resistance == doctest::Approx(2.0));

  // Idempotent: a second pass changes nothing.
  const LatticeSpec c2 = validate_and_canonicalize(c);
  CHECK(same_bonds(c, c2));
}

TEST_CASE("validation rejects malformed specs") {
  LatticeSpec s = raw_square();

  SUBCASE("dimension") {
    s.dimension = 0;
    CHECK_THROWS_AS_MESSAGE(validate_and_canonicalize(s), Error, "dimension");
  }
  SUBCASE("no sites") {
    s.sites.clear();
    CHECK_THROWS_AS(validate_and_canonicalize(s), Error);
  }
  SUBCASE("duplicate site name") {
    s.sites = {"1", "1"};
    try {
      validate_and_canonicalize(s);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::invalid_argument);
    }
  }
  SUBCASE("self loop") {
    s.bonds.push_back({0, 0, {0, 0}, 1.0});
    try {
      validate_and_canonicalize(s);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::self_loop);
    }
  }
  SUBCASE("bond site out of range") {
    s.bonds.push_back({0, 3, {0, 0}, 1.0});
    try {
      validate_and_canonicalize(s);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::unknown_site);
    }
  }
  SUBCASE("offset length") {
    s.bonds.push_back({0, 0, {1}, 1.0});
    try {
      validate_and_canonicalize(s);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::invalid_argument);
    }
  }
  SUBCASE("non-positive resistance") {
    s.bonds[0].resistance = 0.0;
    try {
      validate_and_canonicalize(s);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::non_positive_resistance);
    }
  }
}

TEST_CASE("connectivity needs both a connected quotient and spanning offsets") {
  SUBCASE("disconnected quotient") {
    LatticeSpec s;
    s.dimension = 1;
    s.sites = {"a", "b"};
    s.bonds = {{0, 0, {1}, 1.0}, {1, 1, {1}, 1.0}};  // two parallel rails, no rung
    try {
      validate_and_canonicalize(s);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::disconnected_lattice);
    }
  }
  SUBCASE("offsets span a proper sublattice") {
    // Rows of a square lattice without vertical bonds: quotient is connected
    // (one site), but cycles only generate Z x {0}.
    LatticeSpec s;
    s.dimension = 2;
    s.sites = {"1"};
    s.bonds = {{0, 0, {1, 0}, 1.0}};
    try {
      validate_and_canonicalize(s);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::disconnected_lattice);
    }
  }
  SUBCASE("offsets reach only even cells") {
    LatticeSpec s;
    s.dimension = 1;
    s.sites = {"1"};
    s.bonds = {{0, 0, {2}, 1.0}};  // steps of two: odd cells unreachable
    try {
      validate_and_canonicalize(s);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::disconnected_lattice);
    }
  }
  SUBCASE("diagonal plus axis does span") {
    LatticeSpec s;
    s.dimension = 2;
    s.sites = {"1"};
    s.bonds = {{0, 0, {1, 1}, 1.0}, {0, 0, {0, 1}, 1.0}};
    CHECK_NOTHROW(validate_and_canonicalize(s));
  }
}

TEST_CASE("weighted degree counts self-bonds twice") {
  const LatticeSpec sq = validate_and_canonicalize(raw_square());
  CHECK(weighted_degree(sq, 0) == doctest::Approx(4.0));

  LatticeSpec s;
  s.dimension = 1;
  s.sites = {"a", "b"};
  s.bonds = {{0, 1, {0}, 0.5}, {1, 0, {1}, 4.0}};
  const LatticeSpec c = validate_and_canonicalize(s);
  CHECK(weighted_degree(c, 0) == doctest::Approx(2.0 + 0.25));
  CHECK(weighted_degree(c, 1) == doctest::Approx(2.0 + 0.25));
  CHECK_THROWS_AS(weighted_degree(c, 2), Error);
}

TEST_CASE("real-space stencil blocks satisfy L(r) = L(-r)^T and zero row sums") {
  LatticeSpec s;
  s.dimension = 2;
  s.sites = {"1", "2", "3"};
  s.bonds = {{0, 1, {0, 0}, 1.0}, {0, 1, {-1, 0}, 1.0}, {0, 2, {0, 0}, 1.0},
             {0, 2, {0, -1}, 1.0}, {1, 2, {0, 0}, 1.0},  {1, 2, {1, -1}, 1.0}};
  const LatticeSpec kag = validate_and_canonicalize(s);
  const auto blocks = real_space_stencil(kag);

  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(3, 3);
  for (const auto& [r, block] : blocks) {
    Offset neg(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    const auto it = blocks.find(neg);
    REQUIRE(it != blocks.end());
    CHECK((block - it->second.transpose()).cwiseAbs().maxCoeff() == 0.0);
    total += block;
  }
  // Summing all blocks gives L(x = 0), whose rows sum to zero.
  CHECK(total.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(blocks.at(Offset{0, 0})(0, 0) == doctest::Approx(-4.0));
}

TEST_CASE("check_query validates sites and offset length") {
  const LatticeSpec sq = validate_and_canonicalize(raw_square());
  CHECK_NOTHROW(check_query(sq, {0, 0, {1, 0}}));
  CHECK_THROWS_AS(check_query(sq, {0, 1, {1, 0}}), Error);
  CHECK_THROWS_AS(check_query(sq, {-1, 0, {1, 0}}), Error);
  CHECK_THROWS_AS(check_query(sq, {0, 0, {1}}), Error);
}

TEST_CASE("site_index resolves names") {
  LatticeSpec s;
  s.dimension = 1;
  s.sites = {"top", "bottom"};
  s.bonds = {{0, 1, {0}, 1.0}, {0, 0, {1}, 1.0}};
  const LatticeSpec c = validate_and_canonicalize(s);
  CHECK(c.site_index("top") == 0);
  CHECK(c.site_index("bottom") == 1);
  CHECK_THROWS_AS(c.site_index("middle"), Error);
}
