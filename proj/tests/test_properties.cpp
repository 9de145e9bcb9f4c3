#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "core/catalog.hpp"
#include "core/spectral.hpp"
#include "core/torus.hpp"

using namespace gridohm;

namespace {
Eigen::VectorXd random_x(int d, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  Eigen::VectorXd x(d);
  for (int i = 0; i < d; ++i) x[i] = u(rng);
  return x;
}

// Fixed-order runs make structural comparisons exact up to roundoff.
const QuadratureConfig kGrid{64, 0, 1e-5, 0};
}  // namespace

TEST_CASE("L(x) is Hermitian and negative semidefinite across the catalog") {
  std::mt19937 rng(31415);
  for (const auto& entry : list_catalog()) {
    CAPTURE(entry.name);
    for (int trial = 0; trial < 4; ++trial) {
      const Eigen::VectorXd x = random_x(entry.spec.dimension, rng);
      const Eigen::MatrixXcd L = laplacian_at(entry.spec, x);
      CHECK((L - L.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(L, Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("exchange symmetry: R_ab(n) equals R_ba(-n) on a fixed grid") {
  struct Row {
    const char* name;
    ResistanceQuery q;
  };
  const Row rows[] = {
      {"kagome", {0, 1, {1, 0}}},
      {"snub-square", {0, 5, {1, -1}}},
      {"square-octagon", {2, 0, {1, 0}}},
  };
  for (const Row& r : rows) {
    CAPTURE(r.name);
    const LatticeSpec& spec = builtin(r.name).spec;
    ResistanceQuery back{r.q.to, r.q.from, r.q.offset};
    for (int& v : back.offset) v = -v;
    const double fwd = resistance(spec, r.q, kGrid).value;
    const double rev = resistance(spec, back, kGrid).value;
    CHECK(std::abs(fwd - rev) <= 1e-12 * (1.0 + std::abs(fwd)));
  }
}

TEST_CASE("scaling every resistance by s scales every R by s") {
  LatticeSpec scaled = builtin("dice").spec;
  for (Bond& b : scaled.bonds) b.resistance *= 3.7;
  scaled = validate_and_canonicalize(scaled);
  const ResistanceQuery q{0, 1, {0, 0}};
  const double base = resistance(builtin("dice").spec, q, kGrid).value;
  const double big = resistance(scaled, q, kGrid).value;
  CHECK(big == doctest::Approx(3.7 * base).epsilon(1e-12));
}

TEST_CASE("relabeling sites leaves resistances unchanged") {
  const LatticeSpec& kag = builtin("kagome").spec;
  LatticeSpec perm;
  perm.dimension = 2;
  perm.sites = {"c", "b", "a"};  // site i of the original becomes 2 - i
  for (const Bond& b : kag.bonds) perm.bonds.push_back({2 - b.from, 2 - b.to, b.offset, b.resistance});
  perm = validate_and_canonicalize(perm);
  const double orig = resistance(kag, {0, 1, {1, 0}}, kGrid).value;
  const double relab = resistance(perm, {2, 1, {1, 0}}, kGrid).value;
  CHECK(orig == doctest::Approx(relab).epsilon(1e-10));
}

TEST_CASE("re-assigning cell origins is a gauge change") {
  // Shift site alpha into cell s(alpha): bond offsets pick up s(to) - s(from)
  // and query offsets transform the same way.
  const LatticeSpec& kag = builtin("kagome").spec;
  const std::vector<Offset> shift = {{0, 0}, {1, 0}, {-1, 2}};
  LatticeSpec moved = kag;
  for (Bond& b : moved.bonds)
    for (int r = 0; r < 2; ++r) b.offset[r] += shift[b.to][r] - shift[b.from][r];
  moved = validate_and_canonicalize(moved);
  const double orig = resistance(kag, {0, 1, {1, 0}}, kGrid).value;
  const double gauged = resistance(moved, {0, 1, {2, 0}}, kGrid).value;
  CHECK(orig == doctest::Approx(gauged).epsilon(1e-10));
}

TEST_CASE("resistance is a metric: triangle inequality on converged values") {
  const QuadratureConfig cfg{256, 2, 1e-6, 0};
  const LatticeSpec& kag = builtin("kagome").spec;
  const double rab = resistance(kag, {0, 1, {0, 0}}, cfg).value;
  const double rbc = resistance(kag, {1, 2, {0, 0}}, cfg).value;
  const double rac = resistance(kag, {0, 2, {0, 0}}, cfg).value;
  CHECK(rac <= rab + rbc + 1e-9);

  const LatticeSpec& sq = builtin("square").spec;
  const double r10 = resistance(sq, {0, 0, {1, 0}}, cfg).value;
  const double r11 = resistance(sq, {0, 0, {1, 1}}, cfg).value;
  const double r21 = resistance(sq, {0, 0, {2, 1}}, cfg).value;
  CHECK(r21 <= r11 + r10 + 1e-9);
}

TEST_CASE("spectral values sit inside the torus ladder") {
  // Torus resistances increase with N toward the infinite lattice, so the
  // spectral answer must top the ladder.
  const LatticeSpec& kag = builtin("kagome").spec;
  const ResistanceQuery q{0, 1, {0, 0}};
  const double inf_val = resistance(kag, q, {256, 2, 1e-6, 0}).value;
  double prev = 0.0;
  for (int n : {4, 8, 16}) {
    const double v = torus_resistance_kspace(kag, q, {{n, n}});
    CHECK(v > prev);
    CHECK(v < inf_val);
    prev = v;
  }
  CHECK(inf_val - prev <= 1e-2);
}
