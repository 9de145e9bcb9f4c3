#include "core/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>

#include "core/catalog.hpp"
#include "core/errors.hpp"

namespace gridohm {

namespace {

// ---- memoized reference-lattice resistances -------------------------------

// Square resistances are invariant under axis swap and sign flips; fold the
// arguments into the fundamental wedge max >= min >= 0.
std::pair<long long, long long> square_key(long long m, long long n) {
  long long a = std::llabs(m), b = std::llabs(n);
  return {std::max(a, b), std::min(a, b)};
}

// Triangular resistances carry the 12-element point group generated by the
// 60-degree rotation (m, n) -> (-n, m + n) and the swap (m, n) -> (n, m).
// Fold to the lexicographic minimum of the orbit.
std::pair<long long, long long> triangular_key(long long m, long long n) {
  std::pair<long long, long long> best{m, n};
  std::pair<long long, long long> cur{m, n};
  for (int rot = 0; rot < 6; ++rot) {
    best = std::min(best, cur);
    best = std::min(best, std::make_pair(cur.second, cur.first));
    cur = std::make_pair(-cur.second, cur.first + cur.second);
  }
  return best;
}

ResistanceResult memoized(int which, long long m, long long n, const QuadratureConfig& cfg) {
  using Key = std::tuple<int, long long, long long, int, int, double>;
  static std::map<Key, ResistanceResult> table;
  static std::mutex mu;

  const auto key2 = which == 0 ? square_key(m, n) : triangular_key(m, n);
  const Key key{which, key2.first, key2.second, cfg.order, cfg.max_refinements,
                cfg.target_rel_error};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(key);
    if (it != table.end()) return it->second;
  }
  if (std::llabs(m) > 1000000 || std::llabs(n) > 1000000)
    fail(Errc::invalid_argument, "cell offset out of supported range");
  const LatticeSpec& spec = builtin(which == 0 ? "square" : "triangular").spec;
  ResistanceQuery q{0, 0, {static_cast<int>(key2.first), static_cast<int>(key2.second)}};
  ResistanceResult r = resistance(spec, q, cfg);
  {
    std::lock_guard<std::mutex> lock(mu);
    table.emplace(key, r);
  }
  return r;
}

// ---- expansion tables -----------------------------------------------------

struct TermSpec {
  int dm, dn;
  double coeff;
};

struct PairRule {
  double constant;
  std::vector<TermSpec> terms;
};

const PairRule* find_rule(const std::vector<std::pair<std::pair<int, int>, PairRule>>& rules,
                          int alpha, int beta) {
  for (const auto& r : rules)
    if (r.first.first == alpha && r.first.second == beta) return &r.second;
  return nullptr;
}

const std::vector<std::pair<std::pair<int, int>, PairRule>>& kagome_rules() {
  static const std::vector<std::pair<std::pair<int, int>, PairRule>> rules = {
      {{0, 0}, {1.0 / 9, {{0, 0, 7.0 / 3}, {-1, 1, -1.0 / 6}, {1, -1, -1.0 / 6}}}},
      {{0, 1}, {1.0 / 9, {{0, 0, 5.0 / 6}, {1, 0, 5.0 / 6}, {1, -1, 1.0 / 6}, {0, 1, 1.0 / 6}}}},
      {{0, 2}, {1.0 / 9, {{0, 0, 5.0 / 6}, {0, 1, 5.0 / 6}, {1, 0, 1.0 / 6}, {-1, 1, 1.0 / 6}}}},
      {{1, 1}, {1.0 / 9, {{0, 0, 7.0 / 3}, {0, -1, -1.0 / 6}, {0, 1, -1.0 / 6}}}},
      {{1, 2}, {1.0 / 9, {{0, 0, 5.0 / 6}, {-1, 1, 5.0 / 6}, {-1, 0, 1.0 / 6}, {0, 1, 1.0 / 6}}}},
      {{2, 2}, {1.0 / 9, {{0, 0, 7.0 / 3}, {-1, 0, -1.0 / 6}, {1, 0, -1.0 / 6}}}},
  };
  return rules;
}

const std::vector<std::pair<std::pair<int, int>, PairRule>>& dice_rules() {
  static const std::vector<std::pair<std::pair<int, int>, PairRule>> rules = {
      {{0, 0}, {0.0, {{0, 0, 1.5}}}},
      {{0, 1}, {1.0 / 6, {{0, 0, 0.5}, {1, 0, 0.5}, {0, 1, 0.5}}}},
      {{0, 2}, {1.0 / 6, {{1, 0, 0.5}, {0, 1, 0.5}, {1, 1, 0.5}}}},
      {{1, 1}, {1.0 / 3, {{0, 0, 1.5}}}},  // constant dropped at coincident sites
      {{1, 2}, {1.0 / 3, {{0, 0, 1.0 / 3}, {1, 0, 1.0 / 3}, {0, 1, 1.0 / 3},
                          {-1, 1, 1.0 / 6}, {1, -1, 1.0 / 6}, {1, 1, 1.0 / 6}}}},
      {{2, 2}, {1.0 / 3, {{0, 0, 1.5}}}},
  };
  return rules;
}

const std::vector<std::pair<std::pair<int, int>, PairRule>>& decorated_rules() {
  static const std::vector<std::pair<std::pair<int, int>, PairRule>> rules = {
      {{0, 0}, {0.0, {{0, 0, 2.0}}}},
      {{0, 1}, {0.25, {{0, 0, 1.0}, {1, 0, 1.0}}}},
      {{0, 2}, {0.25, {{0, 0, 1.0}, {0, 1, 1.0}}}},
      {{1, 1}, {0.5, {{0, 0, 3.0}, {0, -1, -0.5}, {0, 1, -0.5}}}},
      {{1, 2}, {0.5, {{0, 0, 0.5}, {-1, 0, 0.5}, {-1, 1, 0.5}, {0, 1, 0.5}}}},
      {{2, 2}, {0.5, {{0, 0, 3.0}, {-1, 0, -0.5}, {1, 0, -0.5}}}},
  };
  return rules;
}

MappedResistance assemble(const std::string& lattice, const std::string& reference,
                          const std::vector<std::pair<std::pair<int, int>, PairRule>>& rules,
                          int alpha, int beta, long long m, long long n,
                          const QuadratureConfig& cfg) {
  if (alpha < 0 || alpha > 2 || beta < 0 || beta > 2)
    fail(Errc::invalid_argument, lattice + " sites are indexed 0..2");
  symmetry_complete(alpha, beta, m, n);

  MappedResistance out;
  out.lattice = lattice;
  out.reference = reference;
  out.alpha = alpha;
  out.beta = beta;
  out.m = m;
  out.n = n;

  const PairRule* rule = find_rule(rules, alpha, beta);
  if (!rule) fail(Errc::internal, "missing expansion rule");
  double constant = rule->constant;
  // A dice rim site paired with itself loses the hub detour constant.
  if (lattice == "dice" && alpha == beta && alpha > 0 && m == 0 && n == 0) constant = 0.0;

  out.constant = constant;
  double value = constant, err = 0;
  for (const TermSpec& t : rule->terms) {
    ResistanceResult r = memoized(reference == "square" ? 0 : 1, m + t.dm, n + t.dn, cfg);
    out.terms.push_back({m + t.dm, n + t.dn, t.coeff, r.value, r.error_estimate});
    value += t.coeff * r.value;
    err += std::abs(t.coeff) * r.error_estimate;
  }
  out.value = value;
  out.error_estimate = err;
  return out;
}

}  // namespace

double chain_resistance(double r1, double r2, int alpha, int beta, long long m) {
  if (!(r1 > 0) || !(r2 > 0)) fail(Errc::non_positive_resistance, "chain resistances must be > 0");
  if (alpha < 0 || alpha > 1 || beta < 0 || beta > 1)
    fail(Errc::invalid_argument, "chain sites are indexed 0..1");
  const double am = static_cast<double>(std::llabs(m));
  if (alpha == beta) return (r1 + r2) * am;
  if (alpha == 0) return r1 * static_cast<double>(std::llabs(m + 1)) + r2 * am;
  return r1 * static_cast<double>(std::llabs(m - 1)) + r2 * am;
}

ResistanceResult square_resistance(long long m, long long n, const QuadratureConfig& cfg) {
  return memoized(0, m, n, cfg);
}

ResistanceResult triangular_resistance(long long m, long long n, const QuadratureConfig& cfg) {
  return memoized(1, m, n, cfg);
}

void symmetry_complete(int& alpha, int& beta, long long& m, long long& n) {
  if (alpha <= beta) return;
  std::swap(alpha, beta);
  m = -m;
  n = -n;
}

MappedResistance kagome_via_triangular(int alpha, int beta, long long m, long long n,
                                       const QuadratureConfig& cfg) {
  return assemble("kagome", "triangular", kagome_rules(), alpha, beta, m, n, cfg);
}

MappedResistance dice_via_triangular(int alpha, int beta, long long m, long long n,
                                     const QuadratureConfig& cfg) {
  return assemble("dice", "triangular", dice_rules(), alpha, beta, m, n, cfg);
}

MappedResistance decorated_via_square(int alpha, int beta, long long m, long long n,
                                      const QuadratureConfig& cfg) {
  return assemble("decorated", "square", decorated_rules(), alpha, beta, m, n, cfg);
}

}  // namespace gridohm
