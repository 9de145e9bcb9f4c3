#include "core/catalog.hpp"

#include <cmath>
#include <complex>

namespace gridohm {

namespace {

using cplx = std::complex<double>;
const cplx I(0.0, 1.0);

LatticeSpec make(int d, int p, std::vector<Bond> bonds) {
  LatticeSpec raw;
  raw.dimension = d;
  for (int i = 1; i <= p; ++i) raw.sites.push_back(std::to_string(i));
  raw.bonds = std::move(bonds);
  return validate_and_canonicalize(std::move(raw));
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> cat;
  cat.push_back({"chain2", "1D chain, two-site cell with alternating resistances", chain2(1, 1)});
  cat.push_back({"square", "square lattice, coordination 4", make(2, 1, {
      {0, 0, {1, 0}}, {0, 0, {0, 1}}})});
  cat.push_back({"triangular", "triangular lattice, 60-degree cell, coordination 6", make(2, 1, {
      {0, 0, {1, 0}}, {0, 0, {0, 1}}, {0, 0, {1, -1}}})});
  cat.push_back({"cubic", "simple cubic lattice, coordination 6", make(3, 1, {
      {0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}, {0, 0, {0, 0, 1}}})});
  {
    std::vector<Bond> bonds = {{0, 0, {1, 0, 0}}, {0, 0, {0, 1, 0}}, {0, 0, {0, 0, 1}}};
    for (int e1 = 0; e1 >= -1; --e1)
      for (int e2 = 0; e2 >= -1; --e2)
        for (int e3 = 0; e3 >= -1; --e3) bonds.push_back({0, 1, {e1, e2, e3}});
    cat.push_back({"bcc", "body-centered cubic: corner site 1, center site 2", make(3, 2, bonds)});
  }
  cat.push_back({"honeycomb", "honeycomb lattice in brick-wall form, coordination 3", make(2, 2, {
      {0, 1, {0, 0}}, {0, 1, {-1, 0}}, {0, 1, {0, -1}}})});
  cat.push_back({"kagome", "kagome lattice of corner-sharing triangles, coordination 4",
      make(2, 3, {
      {0, 1, {0, 0}}, {0, 1, {-1, 0}},
      {0, 2, {0, 0}}, {0, 2, {0, -1}},
      {1, 2, {0, 0}}, {1, 2, {1, -1}}})});
  cat.push_back({"dice", "dice (rhombille) lattice: hub site 1 of degree 6, rim sites of degree 3",
      make(2, 3, {
      {0, 1, {0, 0}}, {0, 1, {-1, 0}}, {0, 1, {0, -1}},
      {0, 2, {-1, 0}}, {0, 2, {0, -1}}, {0, 2, {-1, -1}}})});
  cat.push_back({"decorated", "square lattice with a midpoint site on every bond", make(2, 3, {
      {0, 1, {0, 0}}, {0, 1, {-1, 0}},
      {0, 2, {0, 0}}, {0, 2, {0, -1}}})});
  cat.push_back({"centered-square", "square lattice with a center site in every plaquette",
      make(2, 2, {
      {0, 0, {1, 0}}, {0, 0, {0, 1}},
      {0, 1, {0, 0}}, {0, 1, {-1, 0}}, {0, 1, {0, -1}}, {0, 1, {-1, -1}}})});
  cat.push_back({"square-octagon", "4.8.8 truncated square tiling, four-site cell", make(2, 4, {
      {0, 1, {0, 0}}, {0, 2, {-1, 0}}, {0, 3, {0, 0}},
      {1, 2, {0, 0}}, {1, 3, {0, -1}}, {2, 3, {0, 0}}})});
  cat.push_back({"snub-square", "3.3.4.3.4 snub square tiling, eight-site cell", make(2, 8, {
      {0, 1, {-1, 0}}, {0, 2, {0, 0}}, {0, 3, {0, -1}}, {0, 4, {0, 0}}, {0, 6, {0, -1}},
      {1, 2, {1, 0}}, {1, 3, {1, -1}}, {1, 4, {0, 0}}, {1, 6, {0, -1}},
      {2, 3, {0, 0}}, {2, 5, {-1, 0}}, {2, 7, {0, 0}},
      {3, 5, {-1, 0}}, {3, 7, {0, 0}},
      {4, 5, {0, 0}}, {4, 6, {0, -1}}, {4, 7, {0, 0}},
      {5, 6, {0, 0}}, {5, 7, {0, 0}},
      {6, 7, {0, 0}}})});
  return cat;
}

}  // namespace

const std::vector<CatalogEntry>& list_catalog() {
  static const std::vector<CatalogEntry> cat = build_catalog();
  return cat;
}

const CatalogEntry& builtin(const std::string& name) {
  for (const CatalogEntry& e : list_catalog())
    if (e.name == name) return e;
  std::string names;
  for (const CatalogEntry& e : list_catalog()) names += (names.empty() ? "" : ", ") + e.name;
  fail(Errc::unknown_lattice, "unknown lattice '" + name + "' (available: " + names + ")");
}

LatticeSpec chain2(double r1, double r2) {
  LatticeSpec raw;
  raw.dimension = 1;
  raw.sites = {"1", "2"};
  raw.bonds = {{0, 1, {0}, r1}, {1, 0, {1}, r2}};
  return validate_and_canonicalize(std::move(raw));
}

Eigen::MatrixXcd reference_chain_laplacian(double r1, double r2, double x) {
  const double g1 = 1.0 / r1, g2 = 1.0 / r2;
  Eigen::MatrixXcd L(2, 2);
  L << -g1 - g2, g1 + g2 * std::exp(-I * x),
       g1 + g2 * std::exp(I * x), -g1 - g2;
  return L;
}

Eigen::MatrixXcd reference_laplacian(const std::string& name, const Eigen::VectorXd& x) {
  const auto e = [&](double a) { return std::exp(I * a); };

  if (name == "chain2") return reference_chain_laplacian(1, 1, x[0]);
  if (name == "square") {
    Eigen::MatrixXcd L(1, 1);
    L(0, 0) = -4.0 + 2.0 * std::cos(x[0]) + 2.0 * std::cos(x[1]);
    return L;
  }
  if (name == "triangular") {
    Eigen::MatrixXcd L(1, 1);
    L(0, 0) = -6.0 + 2.0 * std::cos(x[0]) + 2.0 * std::cos(x[1]) + 2.0 * std::cos(x[0] - x[1]);
    return L;
  }
  if (name == "cubic") {
    Eigen::MatrixXcd L(1, 1);
    L(0, 0) = -6.0 + 2.0 * (std::cos(x[0]) + std::cos(x[1]) + std::cos(x[2]));
    return L;
  }
  if (name == "bcc") {
    const cplx B = (1.0 + e(x[0])) * (1.0 + e(x[1])) * (1.0 + e(x[2]));
    const double A = 2.0 * (std::cos(x[0]) + std::cos(x[1]) + std::cos(x[2]));
    Eigen::MatrixXcd L(2, 2);
    L << A - 14.0, std::conj(B),
         B, -8.0;
    return L;
  }
  if (name == "honeycomb") {
    Eigen::MatrixXcd L(2, 2);
    const cplx B = 1.0 + e(-x[0]) + e(-x[1]);
    L << -3.0, B,
         std::conj(B), -3.0;
    return L;
  }
  if (name == "kagome") {
    Eigen::MatrixXcd L(3, 3);
    L << -4.0, 1.0 + e(-x[0]), 1.0 + e(-x[1]),
         1.0 + e(x[0]), -4.0, 1.0 + e(x[0] - x[1]),
         1.0 + e(x[1]), 1.0 + e(-(x[0] - x[1])), -4.0;
    return L;
  }
  if (name == "dice") {
    const cplx A = 1.0 + e(x[0]) + e(x[1]);
    const cplx B = e(x[0]) + e(x[1]) + e(x[0] + x[1]);
    Eigen::MatrixXcd L(3, 3);
    L << -6.0, std::conj(A), std::conj(B),
         A, -3.0, 0.0,
         B, 0.0, -3.0;
    return L;
  }
  if (name == "decorated") {
    Eigen::MatrixXcd L(3, 3);
    L << -4.0, 1.0 + e(-x[0]), 1.0 + e(-x[1]),
         1.0 + e(x[0]), -2.0, 0.0,
         1.0 + e(x[1]), 0.0, -2.0;
    return L;
  }
  if (name == "centered-square") {
    const double A = -8.0 + 2.0 * (std::cos(x[0]) + std::cos(x[1]));
    const cplx B = (1.0 + e(x[0])) * (1.0 + e(x[1]));
    Eigen::MatrixXcd L(2, 2);
    L << A, std::conj(B),
         B, -4.0;
    return L;
  }
  if (name == "square-octagon") {
    Eigen::MatrixXcd L(4, 4);
    L << -3.0, 1.0, e(-x[0]), 1.0,
         1.0, -3.0, 1.0, e(-x[1]),
         e(x[0]), 1.0, -3.0, 1.0,
         1.0, e(x[1]), 1.0, -3.0;
    return L;
  }
  if (name == "snub-square") {
    const cplx A = e(x[0]), B = e(x[1]), C = e(x[1] - x[0]);
    const cplx As = std::conj(A), Bs = std::conj(B), Cs = std::conj(C);
    Eigen::MatrixXcd L(8, 8);
    L << -5.0, As, 1.0, Bs, 1.0, 0.0, Bs, 0.0,
         A, -5.0, A, Cs, 1.0, 0.0, Bs, 0.0,
         1.0, As, -5.0, 1.0, 0.0, As, 0.0, 1.0,
         B, C, 1.0, -5.0, 0.0, As, 0.0, 1.0,
         1.0, 1.0, 0.0, 0.0, -5.0, 1.0, Bs, 1.0,
         0.0, 0.0, A, A, 1.0, -5.0, 1.0, 1.0,
         B, B, 0.0, 0.0, B, 1.0, -5.0, 1.0,
         0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, -5.0;
    return L;
  }
  fail(Errc::unknown_lattice, "no reference Laplacian for '" + name + "'");
}

}  // namespace gridohm
