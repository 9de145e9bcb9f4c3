#include "core/torus.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Sparse>

#include "core/spectral.hpp"

namespace gridohm {

namespace {

using cplx = std::complex<double>;

long long check_torus(const LatticeSpec& spec, const ResistanceQuery& q, const TorusConfig& t) {
  check_query(spec, q);
  if (static_cast<int>(t.sizes.size()) != spec.dimension)
    fail(Errc::invalid_argument, "torus needs one size per dimension");
  long long cells = 1;
  for (int n : t.sizes) {
    if (n < 2 || n % 2 != 0)
      fail(Errc::invalid_argument, "torus sizes must be even and >= 2, got " + std::to_string(n));
    cells *= n;
  }
  return cells;
}

int wrap(int v, int n) {
  const int r = v % n;
  return r < 0 ? r + n : r;
}

}  // namespace

double torus_resistance_kspace(const LatticeSpec& spec, const ResistanceQuery& q,
                               const TorusConfig& t) {
  const long long cells = check_torus(spec, q, t);
  const int p = spec.site_count();
  const int d = spec.dimension;

  // Deflated solver for the x = 0 term: -L(0) + J/p is SPD and agrees with
  // -L(0) on the zero-sum subspace that u lives in.
  Eigen::MatrixXd A0 = (-laplacian_at(spec, Eigen::VectorXd::Zero(d))).real();
  A0.array() += 1.0 / p;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt0(A0);

  std::vector<double> terms(static_cast<std::size_t>(cells));
  Eigen::MatrixXcd A(p, p);
  Eigen::VectorXcd u(p), y(p);
  Eigen::VectorXd x(d);
  std::vector<int> m(d, 0);

  for (long long idx = 0; idx < cells; ++idx) {
    long long rest = idx;
    bool origin = true;
    for (int tdim = d - 1; tdim >= 0; --tdim) {
      m[tdim] = static_cast<int>(rest % t.sizes[tdim]);
      rest /= t.sizes[tdim];
      origin &= (m[tdim] == 0);
      x[tdim] = 2.0 * std::numbers::pi * m[tdim] / t.sizes[tdim];
    }

    double ang = 0.0;
    for (int r = 0; r < d; ++r) ang += x[r] * q.offset[r];
    u.setZero();
    u[q.from] += 1.0;
    u[q.to] -= std::polar(1.0, -ang);
    if (u.isZero(0.0)) {
      terms[idx] = 0.0;
      continue;
    }

    if (origin) {
      const Eigen::VectorXd ur = u.real();
      terms[idx] = ur.dot(ldlt0.solve(ur));
    } else {
      A = -laplacian_at(spec, x);
      const Eigen::LLT<Eigen::MatrixXcd> llt(A);
      if (llt.info() != Eigen::Success)
        fail(Errc::internal, "torus Laplacian factorization failed off the origin");
      y = llt.solve(u);
      terms[idx] = u.dot(y).real();
    }
  }
  return pairwise_sum(terms.data(), terms.size()) / static_cast<double>(cells);
}

double torus_resistance_realspace(const LatticeSpec& spec, const ResistanceQuery& q,
                                  const TorusConfig& t, int ground_node) {
  const long long cells = check_torus(spec, q, t);
  const int p = spec.site_count();
  const int d = spec.dimension;
  const long long nodes = cells * p;
  if (ground_node < 0 || ground_node >= nodes)
    fail(Errc::invalid_argument, "ground node out of range");

  auto cell_index = [&](const std::vector<int>& c) {
    long long idx = 0;
    for (int r = 0; r < d; ++r) idx = idx * t.sizes[r] + c[r];
    return idx;
  };

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(nodes) * 4);
  std::vector<int> c(d, 0), cn(d, 0);
  for (long long ci = 0; ci < cells; ++ci) {
    long long rest = ci;
    for (int r = d - 1; r >= 0; --r) {
      c[r] = static_cast<int>(rest % t.sizes[r]);
      rest /= t.sizes[r];
    }
    for (const Bond& b : spec.bonds) {
      for (int r = 0; r < d; ++r) cn[r] = wrap(c[r] + b.offset[r], t.sizes[r]);
      const long long i = ci * p + b.from;
      const long long j = cell_index(cn) * p + b.to;
      if (i == j) continue;  // bond wrapped onto itself; carries no current
      const double g = 1.0 / b.resistance;
      trip.emplace_back(i, i, g);
      trip.emplace_back(j, j, g);
      trip.emplace_back(i, j, -g);
      trip.emplace_back(j, i, -g);
    }
  }

  // Ground one node by dropping its row/column, which makes the Laplacian
  // positive definite on the rest.
  auto reduced = [&](long long full) { return full < ground_node ? full : full - 1; };
  std::vector<Eigen::Triplet<double>> rtrip;
  rtrip.reserve(trip.size());
  for (const auto& tr : trip) {
    if (tr.row() == ground_node || tr.col() == ground_node) continue;
    rtrip.emplace_back(reduced(tr.row()), reduced(tr.col()), tr.value());
  }
  Eigen::SparseMatrix<double> lap(nodes - 1, nodes - 1);
  lap.setFromTriplets(rtrip.begin(), rtrip.end());

  std::vector<int> to_cell(d);
  for (int r = 0; r < d; ++r) to_cell[r] = wrap(q.offset[r], t.sizes[r]);
  const long long src = 0 * p + q.from;
  const long long snk = cell_index(to_cell) * p + q.to;
  if (src == snk) return 0.0;

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nodes - 1);
  if (src != ground_node) rhs[reduced(src)] += 1.0;
  if (snk != ground_node) rhs[reduced(snk)] -= 1.0;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(lap);
  if (solver.info() != Eigen::Success) fail(Errc::internal, "sparse factorization failed");
  const Eigen::VectorXd v = solver.solve(rhs);
  const double v_src = (src == ground_node) ? 0.0 : v[reduced(src)];
  const double v_snk = (snk == ground_node) ? 0.0 : v[reduced(snk)];
  return v_src - v_snk;
}

std::vector<std::pair<int, double>> convergence_to_infinite(const LatticeSpec& spec,
                                                            const ResistanceQuery& q,
                                                            const std::vector<TorusConfig>& sizes) {
  std::vector<std::pair<int, double>> out;
  int last = 0;
  for (const TorusConfig& t : sizes) {
    if (t.sizes.empty() || t.sizes[0] <= last)
      fail(Errc::invalid_argument, "torus sizes must be strictly ascending");
    last = t.sizes[0];
    out.emplace_back(last, torus_resistance_kspace(spec, q, t));
  }
  return out;
}

}  // namespace gridohm
