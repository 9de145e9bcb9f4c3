#include "core/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

namespace gridohm {

namespace {

using cplx = std::complex<double>;
constexpr double kConditionCap = 1e12;

double bond_phase_angle(const Bond& b, const Eigen::VectorXd& x) {
  double a = 0.0;
  for (int r = 0; r < static_cast<int>(b.offset.size()); ++r) a += x[r] * b.offset[r];
  return a;
}

// Assemble A = -L(x): Hermitian, positive definite for x != 0 on a connected
// lattice (v^dag A v = sum over bonds of g |v_a - e^{i x.s} v_b|^2).
void minus_laplacian_at(const LatticeSpec& spec, const Eigen::VectorXd& x, Eigen::MatrixXcd& A) {
  const int p = spec.site_count();
  A.setZero(p, p);
  for (const Bond& b : spec.bonds) {
    const double g = 1.0 / b.resistance;
    const double ang = bond_phase_angle(b, x);
    if (b.from == b.to) {
      A(b.from, b.from) += 2.0 * g * (1.0 - std::cos(ang));
    } else {
      const cplx w = std::polar(g, ang);
      A(b.from, b.to) -= w;
      A(b.to, b.from) -= std::conj(w);
      A(b.from, b.from) += g;
      A(b.to, b.to) += g;
    }
  }
}

struct HermitianSolver {
  Eigen::LLT<Eigen::MatrixXcd> llt;

  // Factor A and guard against (near-)singular points: the squared ratio of
  // extreme Cholesky pivots bounds the usable conditioning cheaply.
  bool factor(const Eigen::MatrixXcd& A) {
    llt.compute(A);
    if (llt.info() != Eigen::Success) return false;
    const auto& f = llt.matrixLLT();
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
    for (int i = 0; i < f.rows(); ++i) {
      const double di = f(i, i).real();
      dmin = std::min(dmin, di);
      dmax = std::max(dmax, di);
    }
    if (!(dmin > 0.0)) return false;
    const double r = dmax / dmin;
    return r * r <= kConditionCap;
  }
};

struct GridStage {
  const LatticeSpec* spec;
  ResistanceQuery q;
  int M = 0;
  int d = 0;
  int p = 0;
  bool trivial = false;  // from == to with zero offset: integrand vanishes
  // Per-axis phase tables: bond k at node index j along axis t contributes the
  // factor bond_tab[k][t][j] = e^{i x_j s_t}; the full bond phase is the
  // product over axes. query_tab holds e^{-i n_t x_j} the same way.
  std::vector<std::vector<std::vector<cplx>>> bond_tab;
  std::vector<std::vector<cplx>> query_tab;
  std::vector<double> degree;

  GridStage(const LatticeSpec& s, const ResistanceQuery& query, int order)
      : spec(&s), q(query), M(order), d(s.dimension), p(s.site_count()) {
    const bool zero_off =
        std::all_of(q.offset.begin(), q.offset.end(), [](int v) { return v == 0; });
    trivial = (q.from == q.to && zero_off);
    if (trivial) return;

    std::vector<double> axis(M);
    const double h = 2.0 * std::numbers::pi / M;
    for (int j = 0; j < M; ++j) axis[j] = -std::numbers::pi + (j + 0.5) * h;

    bond_tab.assign(spec->bonds.size(), std::vector<std::vector<cplx>>(d));
    for (std::size_t k = 0; k < spec->bonds.size(); ++k) {
      for (int t = 0; t < d; ++t) {
        auto& tab = bond_tab[k][t];
        tab.resize(M);
        const int s = spec->bonds[k].offset[t];
        for (int j = 0; j < M; ++j) tab[j] = std::polar(1.0, axis[j] * s);
      }
    }
    query_tab.assign(d, {});
    for (int t = 0; t < d; ++t) {
      auto& tab = query_tab[t];
      tab.resize(M);
      for (int j = 0; j < M; ++j) tab[j] = std::polar(1.0, -axis[j] * q.offset[t]);
    }
    degree.resize(p);
    for (int i = 0; i < p; ++i) degree[i] = weighted_degree(*spec, i);
  }

  // Sum of integrand values over one row of the innermost axis, with the
  // leading indices fixed. Scratch buffers belong to the calling worker.
  double row_sum(const int* lead, Eigen::MatrixXcd& A, Eigen::VectorXcd& y,
                 Eigen::LLT<Eigen::MatrixXcd>& llt, std::vector<double>& buf,
                 std::vector<cplx>& lead_phase) const {
    const auto& bonds = spec->bonds;
    const std::size_t B = bonds.size();
    // Phase contribution of the fixed leading axes, per bond; the query
    // factor is stored at slot B.
    for (std::size_t k = 0; k <= B; ++k) lead_phase[k] = 1.0;
    for (int t = 0; t + 1 < d; ++t) {
      for (std::size_t k = 0; k < B; ++k) lead_phase[k] *= bond_tab[k][t][lead[t]];
      lead_phase[B] *= query_tab[t][lead[t]];
    }

    const int t_in = d - 1;
    for (int j = 0; j < M; ++j) {
      cplx qw = lead_phase[B] * query_tab[t_in][j];
      if (p == 1) {
        // p = 1: A is the real scalar sum of 2g(1 - cos x.s) over bonds.
        double a00 = 0.0;
        for (std::size_t k = 0; k < B; ++k) {
          const cplx w = lead_phase[k] * bond_tab[k][t_in][j];
          a00 += 2.0 * (1.0 - w.real()) / bonds[k].resistance;
        }
        const double unorm = std::norm(1.0 - qw);
        buf[j] = (unorm == 0.0) ? 0.0 : unorm / a00;
        continue;
      }
      A.setZero(p, p);
      for (int i = 0; i < p; ++i) A(i, i) = degree[i];
      for (std::size_t k = 0; k < B; ++k) {
        const Bond& b = bonds[k];
        const cplx w = lead_phase[k] * bond_tab[k][t_in][j];
        if (b.from == b.to) {
          A(b.from, b.from) -= 2.0 * w.real() / b.resistance;
        } else {
          const double g = 1.0 / b.resistance;
          A(b.from, b.to) -= g * w;
          A(b.to, b.from) -= g * std::conj(w);
        }
      }
      y.setZero(p);
      y[q.from] += 1.0;
      y[q.to] -= qw;
      const cplx u_from = y[q.from], u_to = y[q.to];
      if (u_from == 0.0 && u_to == 0.0) {  // query phase hit 1 exactly
        buf[j] = 0.0;
        continue;
      }
      llt.compute(A);
      if (llt.info() != Eigen::Success)
        fail(Errc::singular_point, "Laplacian factorization failed at a quadrature node");
      llt.solveInPlace(y);
      // u has a single component when from == to; don't count it twice.
      buf[j] = q.from == q.to
                   ? (std::conj(u_from) * y[q.from]).real()
                   : (std::conj(u_from) * y[q.from] + std::conj(u_to) * y[q.to]).real();
    }
    return pairwise_sum(buf.data(), M);
  }
};

// Mean of the integrand over the M^d midpoint grid. Rows (all leading-index
// combinations) are distributed over workers; every row's partial sum lands
// in a fixed slot and the final reduction is a fixed pairwise tree, so the
// result is bit-identical for any thread count.
double integrate_stage(const GridStage& st, int threads) {
  if (st.trivial) return 0.0;
  const int d = st.d, M = st.M;
  long long nrows = 1;
  for (int t = 0; t + 1 < d; ++t) nrows *= M;

  std::vector<double> row_sums(static_cast<std::size_t>(nrows));
  const int nw = static_cast<int>(std::max<long long>(1, std::min<long long>(threads, nrows)));

  auto work = [&](long long r0, long long r1) {
    Eigen::MatrixXcd A(st.p, st.p);
    Eigen::VectorXcd y(st.p);
    Eigen::LLT<Eigen::MatrixXcd> llt(st.p);
    std::vector<double> buf(M);
    std::vector<cplx> lead_phase(st.spec->bonds.size() + 1);
    std::vector<int> lead(std::max(1, d - 1), 0);
    for (long long r = r0; r < r1; ++r) {
      long long rest = r;
      for (int t = d - 2; t >= 0; --t) {
        lead[t] = static_cast<int>(rest % M);
        rest /= M;
      }
      row_sums[r] = st.row_sum(lead.data(), A, y, llt, buf, lead_phase);
    }
  };

  if (nw == 1) {
    work(0, nrows);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mu;
    const long long chunk = (nrows + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      const long long r0 = w * chunk, r1 = std::min<long long>(nrows, r0 + chunk);
      if (r0 >= r1) break;
      pool.emplace_back([&, r0, r1] {
        try {
          work(r0, r1);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  double total = pairwise_sum(row_sums.data(), row_sums.size());
  for (int t = 0; t < d; ++t) total /= M;
  return total;
}

int checked_order(int order, int dimension) {
  const int M = (order == 0) ? default_order(dimension) : order;
  if (M < 2 || M % 2 != 0)
    fail(Errc::invalid_argument,
         "quadrature order must be a positive even integer, got " + std::to_string(M));
  return M;
}

}  // namespace

double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 16) {
    double s = v[0];
    for (std::size_t i = 1; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

int default_order(int dimension) {
  switch (dimension) {
    case 1: return 4096;
    case 2: return 256;
    case 3: return 64;
    default: return 16;
  }
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GRIDOHM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

Eigen::MatrixXcd laplacian_at(const LatticeSpec& spec, const Eigen::VectorXd& x) {
  if (x.size() != spec.dimension)
    fail(Errc::invalid_argument, "x has length " + std::to_string(x.size()) +
                                     ", lattice dimension is " + std::to_string(spec.dimension));
  Eigen::MatrixXcd A;
  minus_laplacian_at(spec, x, A);
  return -A;
}

SpectralSample sample_at(const LatticeSpec& spec, const Eigen::VectorXd& x) {
  return {x, laplacian_at(spec, x)};
}

Eigen::MatrixXcd greens_at(const LatticeSpec& spec, const Eigen::VectorXd& x) {
  if (x.size() != spec.dimension)
    fail(Errc::invalid_argument, "x length does not match lattice dimension");
  Eigen::MatrixXcd A;
  minus_laplacian_at(spec, x, A);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  if (es.info() != Eigen::Success) fail(Errc::internal, "eigendecomposition failed");
  const auto& ev = es.eigenvalues();
  const double lmin = ev(0), lmax = ev(ev.size() - 1);
  if (!(lmin > 0.0) || lmax / lmin > kConditionCap)
    fail(Errc::singular_point, "L(x) is singular or ill-conditioned at this x (condition cap 1e12)");
  // G = -L^{-1} = A^{-1}, reassembled from the spectral decomposition.
  return es.eigenvectors() * ev.cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint();
}

double resistance_integrand(const LatticeSpec& spec, const ResistanceQuery& q,
                            const Eigen::VectorXd& x) {
  check_query(spec, q);
  if (x.size() != spec.dimension)
    fail(Errc::invalid_argument, "x length does not match lattice dimension");
  Eigen::MatrixXcd A;
  minus_laplacian_at(spec, x, A);

  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(spec.site_count());
  double ang = 0.0;
  for (int r = 0; r < spec.dimension; ++r) ang += x[r] * q.offset[r];
  u[q.from] += 1.0;
  u[q.to] -= std::polar(1.0, -ang);
  if (u.isZero(0.0)) return 0.0;

  HermitianSolver solver;
  if (!solver.factor(A))
    fail(Errc::singular_point, "L(x) is singular or ill-conditioned at this x (condition cap 1e12)");
  const Eigen::VectorXcd y = solver.llt.solve(u);
  return u.dot(y).real();  // Eigen's dot conjugates the left argument
}

ResistanceResult resistance(const LatticeSpec& spec, const ResistanceQuery& q,
                            QuadratureConfig cfg) {
  check_query(spec, q);
  const auto t0 = std::chrono::steady_clock::now();
  const int threads = resolve_threads(cfg.threads);
  if (cfg.max_refinements < 0)
    fail(Errc::invalid_argument, "max_refinements must be >= 0");
  if (!(cfg.target_rel_error > 0.0))
    fail(Errc::invalid_argument, "target_rel_error must be positive");
  int M = checked_order(cfg.order, spec.dimension);

  ResistanceResult res;
  const bool zero_off = std::all_of(q.offset.begin(), q.offset.end(), [](int v) { return v == 0; });
  if (q.from == q.to && zero_off) {
    // u vanishes identically: the resistance is exactly zero, no grid needed.
    res.order_used = M;
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
  }

  double prev = 0.0;
  bool have_prev = false;
  res.converged = false;
  res.error_estimate = std::numeric_limits<double>::infinity();
  for (int stage = 0; stage <= cfg.max_refinements; ++stage, M *= 2) {
    GridStage grid(spec, q, M);
    const double value = integrate_stage(grid, threads);
    std::int64_t evals = 1;
    for (int t = 0; t < spec.dimension; ++t) evals *= M;
    res.evaluations += evals;
    res.value = value;
    res.order_used = M;
    if (have_prev) {
      res.error_estimate = std::abs(value - prev);
      if (res.error_estimate <= cfg.target_rel_error * std::abs(value)) {
        res.converged = true;
        break;
      }
    }
    prev = value;
    have_prev = true;
  }
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::vector<std::pair<int, double>> convergence_study(const LatticeSpec& spec,
                                                      const ResistanceQuery& q,
                                                      const std::vector<int>& orders,
                                                      QuadratureConfig cfg) {
  check_query(spec, q);
  const int threads = resolve_threads(cfg.threads);
  std::vector<std::pair<int, double>> out;
  int last = 0;
  for (int M : orders) {
    if (M <= last)
      fail(Errc::invalid_argument, "orders must be strictly ascending");
    last = checked_order(M, spec.dimension);
    GridStage grid(spec, q, last);
    out.emplace_back(last, integrate_stage(grid, threads));
  }
  return out;
}

}  // namespace gridohm
