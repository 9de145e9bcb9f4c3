#pragma once

#include <utility>
#include <vector>

#include "core/lattice.hpp"

namespace gridohm {

/// Finite periodic lattice of N_1 x ... x N_d unit cells; every N_i must be
/// even (odd sizes are rejected rather than silently supported).
struct TorusConfig {
  std::vector<int> sizes;
};

/// Exact torus resistance via the discrete k sum over x = 2*pi*(m_1/N_1,...).
/// The singular x = 0 term is handled by deflation: solve
/// (-L(0) + J/p) y = u, valid because u sums to zero. Query offsets wrap
/// around the torus (aliasing for |n_i| >= N_i/2 is intended).
double torus_resistance_kspace(const LatticeSpec& spec, const ResistanceQuery& q,
                               const TorusConfig& t);

/// Exact torus resistance by a direct Kirchhoff solve: assemble the wrapped
/// (N*p) x (N*p) sparse graph Laplacian, inject +1/-1 current, ground one
/// node, solve, and return V_from - V_to. The grounded node is configurable
/// only to let tests verify grounding invariance.
double torus_resistance_realspace(const LatticeSpec& spec, const ResistanceQuery& q,
                                  const TorusConfig& t, int ground_node = 0);

/// k-space torus values over ascending sizes, for convergence-to-infinity
/// reports. The returned N is the leading size of each config.
std::vector<std::pair<int, double>> convergence_to_infinite(const LatticeSpec& spec,
                                                            const ResistanceQuery& q,
                                                            const std::vector<TorusConfig>& sizes);

}  // namespace gridohm
