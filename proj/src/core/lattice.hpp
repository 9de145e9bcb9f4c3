#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/errors.hpp"

namespace gridohm {

using Offset = std::vector<int>;

struct Bond {
  int from = 0;
  int to = 0;
  Offset offset;            // unit cell of `to` relative to the cell of `from`
  double resistance = 1.0;  // conductance = 1/resistance
};

/// Periodic lattice: p named sites per unit cell plus bonds with integer cell
/// offsets. No geometric embedding is stored; only the topology matters for
/// resistances, so unit-cell vectors are kept purely as the integer basis.
struct LatticeSpec {
  int dimension = 0;
  std::vector<std::string> sites;
  std::vector<Bond> bonds;

  int site_count() const { return static_cast<int>(sites.size()); }
  int site_index(const std::string& name) const;  // throws Errc::unknown_site
};

struct NodeRef {
  int site = 0;
  Offset cell;
};

/// Two-point query. Translation invariance is exploited: `from` is always in
/// cell 0 and `offset` is the cell of `to`.
struct ResistanceQuery {
  int from = 0;
  int to = 0;
  Offset offset;
};

/// Validates a raw spec and returns its canonical form: bonds oriented
/// (from <= to; self-bonds get a lexicographically positive offset), parallel
/// bonds merged by adding conductances, and the bond list sorted. The result
/// is byte-stable under re-canonicalization and independent of input order.
///
/// Throws Error with one of: self_loop, unknown_site, non_positive_resistance,
/// invalid_argument, disconnected_lattice. A lattice counts as connected only
/// if the quotient graph is connected AND the fundamental-cycle offsets
/// generate all of Z^d; otherwise L(x) is singular on a positive-measure set.
LatticeSpec validate_and_canonicalize(LatticeSpec raw);

/// Sum of conductances of all bonds incident to `site`; a self-bond (same
/// site, nonzero offset) counts twice. Equals -L(0) on the diagonal.
double weighted_degree(const LatticeSpec& spec, int site);

/// Real-space Laplacian blocks: cell offset r -> p x p block L(r). Finitely
/// many blocks; L(r) == L(-r)^T exactly; the r=0 diagonal carries the
/// negative weighted degrees.
std::map<Offset, Eigen::MatrixXd> real_space_stencil(const LatticeSpec& spec);

/// Throws unless sites are in range and the offset length matches d.
void check_query(const LatticeSpec& spec, const ResistanceQuery& q);

}  // namespace gridohm
