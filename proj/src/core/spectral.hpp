#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "core/lattice.hpp"

namespace gridohm {

struct SpectralSample {
  Eigen::VectorXd x;   // point of the hypercube [-pi, pi]^d
  Eigen::MatrixXcd L;  // p x p Hermitian Laplacian in conductance units
};

struct QuadratureConfig {
  int order = 0;                  // nodes per dimension, even; 0 picks the dimension default
  int max_refinements = 3;        // order doublings allowed after the first pass
  double target_rel_error = 1e-5;
  int threads = 0;                // 0: GRIDOHM_THREADS env var, then hardware
};

struct ResistanceResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |R_M - R_2M| between the last two passes
  int order_used = 0;
  std::int64_t evaluations = 0;
  bool converged = true;
  double wall_seconds = 0.0;
};

/// Default midpoint order per dimension: 4096 (d=1), 256 (d=2), 64 (d=3),
/// 16 beyond.
int default_order(int dimension);

/// Effective worker count: `requested` if positive, else GRIDOHM_THREADS,
/// else hardware concurrency.
int resolve_threads(int requested);

/// k-space Laplacian L(x) = sum_r L(r) e^{-i x.r}; Hermitian by construction.
Eigen::MatrixXcd laplacian_at(const LatticeSpec& spec, const Eigen::VectorXd& x);

SpectralSample sample_at(const LatticeSpec& spec, const Eigen::VectorXd& x);

/// Green's function -L(x)^{-1}. Throws Errc::singular_point when the
/// condition number of -L(x) exceeds 1e12 (always the case at x = 0).
Eigen::MatrixXcd greens_at(const LatticeSpec& spec, const Eigen::VectorXd& x);

/// Integrand of the two-point resistance integral, evaluated without
/// materializing G: with u = e_from - e^{-i n.x} e_to, solve L(x) y = u and
/// return -Re(u^dag y). Nonnegative because -L(x) is positive definite.
double resistance_integrand(const LatticeSpec& spec, const ResistanceQuery& q,
                            const Eigen::VectorXd& x);

/// Two-point resistance of the infinite lattice: tensor-product midpoint rule
/// over [-pi, pi]^d (the value is the plain mean of integrand samples), with
/// order doubling until the target relative error or the refinement cap.
/// A failed target sets converged = false; the value is still returned.
ResistanceResult resistance(const LatticeSpec& spec, const ResistanceQuery& q,
                            QuadratureConfig cfg = {});

/// Fixed-order values (no refinement), for convergence reports.
std::vector<std::pair<int, double>> convergence_study(const LatticeSpec& spec,
                                                      const ResistanceQuery& q,
                                                      const std::vector<int>& orders,
                                                      QuadratureConfig cfg = {});

/// Deterministic pairwise reduction; the tree shape depends only on n, so
/// sums are bit-stable regardless of how the values were produced.
double pairwise_sum(const double* v, std::size_t n);

}  // namespace gridohm
