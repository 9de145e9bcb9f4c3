#pragma once

#include <string>
#include <vector>

#include "core/spectral.hpp"

namespace gridohm {

/// One reference-lattice term of an expansion: coeff * R_ref(m, n).
struct MappingTerm {
  long long m = 0, n = 0;
  double coeff = 0;
  double value = 0;
  double error_estimate = 0;
};

/// A resistance obtained from a finite expansion over a reference lattice.
struct MappedResistance {
  std::string lattice;
  std::string reference;
  int alpha = 0, beta = 0;
  long long m = 0, n = 0;
  double constant = 0;
  double value = 0;
  double error_estimate = 0;
  std::vector<MappingTerm> terms;
};

/// Exact two-point resistance on the alternating chain (sites 0/1, cell shift m).
double chain_resistance(double r1, double r2, int alpha, int beta, long long m);

/// Square-lattice resistance R(m, n), unit resistors.  Memoized across calls.
ResistanceResult square_resistance(long long m, long long n, const QuadratureConfig& cfg = {});

/// Triangular-lattice resistance R(m, n), unit resistors.  Memoized across calls.
ResistanceResult triangular_resistance(long long m, long long n, const QuadratureConfig& cfg = {});

/// Reduce (alpha, beta, m, n) to alpha <= beta via R_ab(r) = R_ba(-r).
void symmetry_complete(int& alpha, int& beta, long long& m, long long& n);

MappedResistance kagome_via_triangular(int alpha, int beta, long long m, long long n,
                                       const QuadratureConfig& cfg = {});
MappedResistance dice_via_triangular(int alpha, int beta, long long m, long long n,
                                     const QuadratureConfig& cfg = {});
MappedResistance decorated_via_square(int alpha, int beta, long long m, long long n,
                                      const QuadratureConfig& cfg = {});

}  // namespace gridohm
