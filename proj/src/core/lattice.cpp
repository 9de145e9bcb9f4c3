#include "core/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <set>
#include <tuple>

namespace gridohm {
namespace {

std::string bond_label(const LatticeSpec& spec, const Bond& b) {
  std::string s = spec.sites[b.from] + " -> " + spec.sites[b.to] + " offset (";
  for (std::size_t i = 0; i < b.offset.size(); ++i)
    s += (i ? "," : "") + std::to_string(b.offset[i]);
  return s + ")";
}

// Union-find over the p cell sites (quotient graph, offsets ignored).
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// True iff the integer columns generate the full lattice Z^d. Column-style
// Hermite reduction with gcd pivoting; the generated sublattice equals Z^d
// exactly when every pivot has magnitude 1.
bool generates_zd(std::vector<std::vector<long long>> cols, int d) {
  std::size_t pivot = 0;
  for (int row = 0; row < d; ++row) {
    while (true) {
      std::size_t best = cols.size();
      for (std::size_t j = pivot; j < cols.size(); ++j) {
        if (cols[j][row] != 0 &&
            (best == cols.size() || std::llabs(cols[j][row]) < std::llabs(cols[best][row])))
          best = j;
      }
      if (best == cols.size()) return false;  // this axis is unreachable
      std::swap(cols[pivot], cols[best]);
      const long long v = cols[pivot][row];
      bool clean = true;
      for (std::size_t j = pivot + 1; j < cols.size(); ++j) {
        if (cols[j][row] == 0) continue;
        const long long q = cols[j][row] / v;
        for (int r = 0; r < d; ++r) cols[j][r] -= q * cols[pivot][r];
        if (cols[j][row] != 0) clean = false;
      }
      if (clean) break;
    }
    if (std::llabs(cols[pivot][row]) != 1) return false;  // proper sublattice
    if (++pivot == cols.size() && row + 1 < d) return false;
  }
  return true;
}

void check_connected(const LatticeSpec& spec) {
  const int p = spec.site_count();
  const int d = spec.dimension;

  UnionFind uf(p);
  for (const Bond& b : spec.bonds) uf.unite(b.from, b.to);
  for (int i = 1; i < p; ++i) {
    if (uf.find(i) != uf.find(0))
      fail(Errc::disconnected_lattice, "quotient graph is disconnected: site '" + spec.sites[i] +
                                           "' is not reachable from site '" + spec.sites[0] + "'");
  }

  // Spanning tree positions: pos[to] = pos[from] + offset along tree bonds.
  // Every non-tree bond closes a cycle whose net cell displacement is
  // pos[from] + offset - pos[to]; the lattice is connected as a d-dimensional
  // network iff these cycle offsets generate Z^d.
  std::vector<std::vector<int>> adj(p);  // bond indices, both directions
  for (std::size_t i = 0; i < spec.bonds.size(); ++i) {
    adj[spec.bonds[i].from].push_back(static_cast<int>(i));
    adj[spec.bonds[i].to].push_back(static_cast<int>(i));
  }
  std::vector<std::vector<long long>> pos(p, std::vector<long long>(d, 0));
  std::vector<char> seen(p, 0);
  std::vector<char> tree(spec.bonds.size(), 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  while (!bfs.empty()) {
    const int a = bfs.front();
    bfs.pop();
    for (int bi : adj[a]) {
      const Bond& b = spec.bonds[bi];
      const int other = (b.from == a) ? b.to : b.from;
      if (seen[other]) continue;
      seen[other] = 1;
      tree[bi] = 1;
      const int sign = (b.from == a) ? +1 : -1;
      for (int r = 0; r < d; ++r) pos[other][r] = pos[a][r] + sign * b.offset[r];
      bfs.push(other);
    }
  }

  std::vector<std::vector<long long>> cycles;
  for (std::size_t i = 0; i < spec.bonds.size(); ++i) {
    if (tree[i]) continue;
    const Bond& b = spec.bonds[i];
    std::vector<long long> c(d);
    bool nonzero = false;
    for (int r = 0; r < d; ++r) {
      c[r] = pos[b.from][r] + b.offset[r] - pos[b.to][r];
      nonzero |= (c[r] != 0);
    }
    if (nonzero) cycles.push_back(std::move(c));
  }
  if (!generates_zd(std::move(cycles), d))
    fail(Errc::disconnected_lattice,
         "bond offsets do not span Z^" + std::to_string(d) +
             ": the infinite lattice splits into disconnected copies");
}

}  // namespace

int LatticeSpec::site_index(const std::string& name) const {
  for (std::size_t i = 0; i < sites.size(); ++i)
    if (sites[i] == name) return static_cast<int>(i);
  fail(Errc::unknown_site, "unknown site '" + name + "'");
}

LatticeSpec validate_and_canonicalize(LatticeSpec raw) {
  if (raw.dimension < 1)
    fail(Errc::invalid_argument, "dimension must be >= 1, got " + std::to_string(raw.dimension));
  if (raw.sites.empty()) fail(Errc::invalid_argument, "lattice needs at least one site");
  {
    std::set<std::string> names;
    for (const auto& s : raw.sites) {
      if (s.empty()) fail(Errc::invalid_argument, "site names must be nonempty");
      if (!names.insert(s).second) fail(Errc::invalid_argument, "duplicate site name '" + s + "'");
    }
  }

  const int p = raw.site_count();
  for (Bond& b : raw.bonds) {
    if (b.from < 0 || b.from >= p || b.to < 0 || b.to >= p)
      fail(Errc::unknown_site, "bond references a site index out of range");
    if (static_cast<int>(b.offset.size()) != raw.dimension)
      fail(Errc::invalid_argument,
           "bond " + bond_label(raw, b) + ": offset length must equal dimension " +
               std::to_string(raw.dimension));
    if (!(b.resistance > 0.0) || !std::isfinite(b.resistance))
      fail(Errc::non_positive_resistance,
           "bond " + bond_label(raw, b) + ": resistance must be positive and finite");
    const bool zero_offset =
        std::all_of(b.offset.begin(), b.offset.end(), [](int v) { return v == 0; });
    if (b.from == b.to && zero_offset)
      fail(Errc::self_loop, "bond " + bond_label(raw, b) + ": self-loop carries no current");

    // Canonical orientation: from <= to; self-bonds keep the offset whose
    // first nonzero component is positive (s and -s describe the same bond).
    if (b.from > b.to) {
      std::swap(b.from, b.to);
      for (int& v : b.offset) v = -v;
    } else if (b.from == b.to) {
      auto it = std::find_if(b.offset.begin(), b.offset.end(), [](int v) { return v != 0; });
      if (it != b.offset.end() && *it < 0)
        for (int& v : b.offset) v = -v;
    }
  }

  // Merge parallel bonds: conductances add.
  std::map<std::tuple<int, int, Offset>, double> merged;
  for (const Bond& b : raw.bonds)
    merged[{b.from, b.to, b.offset}] += 1.0 / b.resistance;

  LatticeSpec out;
  out.dimension = raw.dimension;
  out.sites = std::move(raw.sites);
  out.bonds.reserve(merged.size());
  for (const auto& [key, g] : merged)
    out.bonds.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), 1.0 / g});

  check_connected(out);
  return out;
}

double weighted_degree(const LatticeSpec& spec, int site) {
  if (site < 0 || site >= spec.site_count())
    fail(Errc::unknown_site, "site index " + std::to_string(site) + " out of range");
  double deg = 0.0;
  for (const Bond& b : spec.bonds) {
    if (b.from == site) deg += 1.0 / b.resistance;
    if (b.to == site) deg += 1.0 / b.resistance;
  }
  return deg;
}

std::map<Offset, Eigen::MatrixXd> real_space_stencil(const LatticeSpec& spec) {
  const int p = spec.site_count();
  const int d = spec.dimension;
  std::map<Offset, Eigen::MatrixXd> blocks;
  auto block = [&](const Offset& r) -> Eigen::MatrixXd& {
    auto it = blocks.find(r);
    if (it == blocks.end()) it = blocks.emplace(r, Eigen::MatrixXd::Zero(p, p)).first;
    return it->second;
  };

  const Offset zero(d, 0);
  block(zero);  // always present: it carries the degrees
  for (const Bond& b : spec.bonds) {
    const double g = 1.0 / b.resistance;
    Offset neg(d);
    for (int r = 0; r < d; ++r) neg[r] = -b.offset[r];
    // A bond (a, b, s) couples a in cell 0 with b in cell s, i.e. it appears
    // in block L(-s) at entry (a,b) and in block L(+s) at entry (b,a); the
    // k-space matrix then picks up g*e^{+i x.s} in L_ab(x).
    block(neg)(b.from, b.to) += g;
    block(b.offset)(b.to, b.from) += g;
    block(zero)(b.from, b.from) -= g;
    block(zero)(b.to, b.to) -= g;
  }
  return blocks;
}

void check_query(const LatticeSpec& spec, const ResistanceQuery& q) {
  const int p = spec.site_count();
  if (q.from < 0 || q.from >= p)
    fail(Errc::unknown_site, "query 'from' site index " + std::to_string(q.from) + " out of range");
  if (q.to < 0 || q.to >= p)
    fail(Errc::unknown_site, "query 'to' site index " + std::to_string(q.to) + " out of range");
  if (static_cast<int>(q.offset.size()) != spec.dimension)
    fail(Errc::invalid_argument, "query offset length " + std::to_string(q.offset.size()) +
                                     " does not match lattice dimension " +
                                     std::to_string(spec.dimension));
}

}  // namespace gridohm
