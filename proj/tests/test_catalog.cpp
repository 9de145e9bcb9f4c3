#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core/catalog.hpp"
#include "core/spectral.hpp"

using namespace gridohm;

namespace {
Eigen::VectorXd random_x(int d, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  Eigen::VectorXd x(d);
  for (int i = 0; i < d; ++i) x[i] = u(rng);
  return x;
}
}  // namespace

TEST_CASE("catalog holds the twelve built-in lattices") {
  const auto& entries = list_catalog();
  REQUIRE(entries.size() == 12);
  std::set<std::string> names;
  for (const auto& e : entries) {
    CHECK(!e.description.empty());
    CHECK(e.spec.dimension >= 1);
    CHECK(e.spec.site_count() >= 1);
    names.insert(e.name);
  }
  CHECK(names.size() == 12);

  CHECK(builtin("kagome").spec.site_count() == 3);
  CHECK(builtin("snub-square").spec.site_count() == 8);
  CHECK(builtin("bcc").spec.dimension == 3);
  CHECK(builtin("square-octagon").spec.site_count() == 4);
  try {
    builtin("hexagonal");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_lattice);
  }
}

TEST_CASE("every catalog Laplacian matches its reference matrix at 100 random x") {
  std::mt19937 rng(20260814u);
  for (const auto& entry : list_catalog()) {
    CAPTURE(entry.name);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::VectorXd x = random_x(entry.spec.dimension, rng);
      const Eigen::MatrixXcd got = laplacian_at(entry.spec, x);
      const Eigen::MatrixXcd want = reference_laplacian(entry.name, x);
      worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-14);
  }
}

TEST_CASE("chain2 builds the two-resistor cell") {
  const LatticeSpec chain = chain2(2.2, 0.7);
  CHECK(chain.dimension == 1);
  CHECK(chain.site_count() == 2);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(1);
    x[0] = u(rng);
    const Eigen::MatrixXcd got = laplacian_at(chain, x);
    const Eigen::MatrixXcd want = reference_chain_laplacian(2.2, 0.7, x[0]);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-14);
  }
  CHECK_THROWS_AS(chain2(0.0, 1.0), Error);
  CHECK_THROWS_AS(chain2(1.0, -2.0), Error);
}

TEST_CASE("centered-square and bcc determinants follow their quartic polynomials") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);

  const LatticeSpec& csq = builtin("centered-square").spec;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x(2);
    x << u(rng), u(rng);
    const double c1 = std::cos(x[0]), c2 = std::cos(x[1]);
    const double want = 28.0 - 12.0 * (c1 + c2) - 4.0 * c1 * c2;
    const std::complex<double> det = laplacian_at(csq, x).determinant();
    CHECK(std::abs(det.imag()) <= 1e-12 * std::abs(want));
    CHECK(det.real() == doctest::Approx(want).epsilon(1e-12));
  }

  const LatticeSpec& bcc = builtin("bcc").spec;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x(3);
    x << u(rng), u(rng), u(rng);
    const double c1 = std::cos(x[0]), c2 = std::cos(x[1]), c3 = std::cos(x[2]);
    const double want =
        112.0 - 16.0 * (c1 + c2 + c3) - 8.0 * (1.0 + c1) * (1.0 + c2) * (1.0 + c3);
    const std::complex<double> det = laplacian_at(bcc, x).determinant();
    CHECK(std::abs(det.imag()) <= 1e-12 * std::abs(want));
    CHECK(det.real() == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("Green's function denominators are shared across mapped pairs") {
  // det L_kagome = 6 det L_triangular, det L_decorated = 2 det L_square,
  // det L_square-octagon = det L_centered-square, at every x.
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> u(0.4, 2.7);
  const struct {
    const char* big;
    const char* small;
    double ratio;
  } pairs[] = {
      {"kagome", "triangular", 6.0},
      {"decorated", "square", 2.0},
      {"square-octagon", "centered-square", 1.0},
  };
  for (const auto& pr : pairs) {
    CAPTURE(pr.big);
    const LatticeSpec& a = builtin(pr.big).spec;
    const LatticeSpec& b = builtin(pr.small).spec;
    for (int trial = 0; trial < 25; ++trial) {
      Eigen::VectorXd x(2);
      x << u(rng) * (trial % 2 ? 1.0 : -1.0), u(rng);
      const double da = laplacian_at(a, x).determinant().real();
      const double db = laplacian_at(b, x).determinant().real();
      CHECK(da / db == doctest::Approx(pr.ratio).epsilon(1e-10));
    }
  }
}
