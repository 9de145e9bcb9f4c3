#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/lattice.hpp"

namespace gridohm {

struct CatalogEntry {
  std::string name;
  std::string description;  // tiling / structure summary
  LatticeSpec spec;
};

/// All built-in lattices, in a fixed order. Names:
///   chain2, square, triangular, cubic, bcc, honeycomb, kagome, dice,
///   decorated, centered-square, square-octagon, snub-square
const std::vector<CatalogEntry>& list_catalog();

/// Looks up a catalog entry by name; throws Errc::unknown_lattice.
const CatalogEntry& builtin(const std::string& name);

/// The two-site 1D chain with alternating bond resistances.
LatticeSpec chain2(double r1, double r2);

/// Independent closed-form L(x) for each catalog entry (unit resistance),
/// written out entry by entry rather than generated from the bond list; used
/// to cross-check laplacian_at. For chain2 see reference_chain_laplacian.
Eigen::MatrixXcd reference_laplacian(const std::string& name, const Eigen::VectorXd& x);

Eigen::MatrixXcd reference_chain_laplacian(double r1, double r2, double x);

}  // namespace gridohm
