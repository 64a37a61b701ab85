#include "msp/zoo.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace msp {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

void check_vertex(int v, int nv, const std::string& where) {
  if (v < 0 || v >= nv) bad(where + ": vertex " + std::to_string(v) + " out of range");
}

// Union-find over a small vertex set.
struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

// --------------------------------------------------------------------------
// Uniform
// --------------------------------------------------------------------------

UniformMatroid::UniformMatroid(UniformInstance inst) : inst_(inst) {
  if (inst_.n < 0) bad("uniform: negative n");
  if (inst_.rho < 0 || inst_.rho > inst_.n) bad("uniform: rank out of [0, n]");
}

ElementSet UniformMatroid::greedy_max(const std::vector<int>& candidates) const {
  ElementSet s;
  int take = std::min((int)candidates.size(), inst_.rho);
  for (int i = 0; i < take; ++i) s.insert(candidates[i]);
  return s;
}

// --------------------------------------------------------------------------
// Partition
// --------------------------------------------------------------------------

PartitionMatroid::PartitionMatroid(PartitionInstance inst) : inst_(std::move(inst)) {
  if (inst_.parts.size() != inst_.caps.size()) bad("partition: parts/caps size mismatch");
  part_of_.assign(inst_.n, -1);
  for (size_t j = 0; j < inst_.parts.size(); ++j) {
    if (inst_.caps[j] < 0) bad("partition: negative capacity");
    for (int e : inst_.parts[j]) {
      if (e < 0 || e >= inst_.n) bad("partition: element out of range");
      if (part_of_[e] != -1)
        bad("partition: element " + std::to_string(e) + " in two parts");
      part_of_[e] = (int)j;
    }
  }
}

bool PartitionMatroid::independent(const ElementSet& x) const {
  std::vector<int> used(inst_.parts.size(), 0);
  bool ok = true;
  x.for_each([&](int e) {
    int p = part_of_[e];
    if (p >= 0 && ++used[p] > inst_.caps[p]) ok = false;
  });
  return ok;
}

// --------------------------------------------------------------------------
// Graphic
// --------------------------------------------------------------------------

GraphicMatroid::GraphicMatroid(GraphicInstance inst) : inst_(std::move(inst)) {
  for (auto [u, v] : inst_.edges) {
    check_vertex(u, inst_.num_vertices, "graphic");
    check_vertex(v, inst_.num_vertices, "graphic");
    if (u == v) bad("graphic: self-loop edge");
  }
}

bool GraphicMatroid::independent(const ElementSet& x) const {
  Dsu dsu(inst_.num_vertices);
  bool ok = true;
  x.for_each([&](int e) {
    if (ok && !dsu.unite(inst_.edges[e].first, inst_.edges[e].second)) ok = false;
  });
  return ok;
}

ElementSet GraphicMatroid::greedy_max(const std::vector<int>& candidates) const {
  Dsu dsu(inst_.num_vertices);
  ElementSet s;
  for (int e : candidates) {
    if (dsu.unite(inst_.edges[e].first, inst_.edges[e].second)) s.insert(e);
  }
  return s;
}

// --------------------------------------------------------------------------
// Hypergraphic
// --------------------------------------------------------------------------

HypergraphicMatroid::HypergraphicMatroid(HypergraphicInstance inst)
    : inst_(std::move(inst)) {
  for (const auto& e : inst_.edges) {
    for (int v : e) check_vertex(v, inst_.num_vertices, "hypergraphic");
    auto sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      bad("hypergraphic: repeated vertex in a hyperedge");
  }
}

namespace {

// Backtracking selection of one distinct vertex pair inside each hyperedge so
// that the chosen pairs form a forest. Processing order = the order of `ids`;
// pairs are tried lexicographically, which makes the first full assignment
// canonical for a fixed input order.
bool assign_pairs(const HypergraphicInstance& inst, const std::vector<int>& ids,
                  size_t at, Dsu& dsu, std::vector<std::pair<int, int>>* chosen) {
  if (at == ids.size()) return true;
  const auto& verts = inst.edges[ids[at]];
  std::vector<int> sorted = verts;
  std::sort(sorted.begin(), sorted.end());
  for (size_t a = 0; a + 1 < sorted.size(); ++a) {
    for (size_t b = a + 1; b < sorted.size(); ++b) {
      int u = sorted[a], v = sorted[b];
      Dsu saved = dsu;
      if (!dsu.unite(u, v)) {
        dsu = saved;
        continue;
      }
      if (chosen) chosen->push_back({u, v});
      if (assign_pairs(inst, ids, at + 1, dsu, chosen)) return true;
      if (chosen) chosen->pop_back();
      dsu = saved;
    }
  }
  return false;
}

}  // namespace

bool HypergraphicMatroid::independent(const ElementSet& x) const {
  if (x.size() > 20) bad("hypergraphic oracle limited to 20 queried elements");
  std::vector<int> ids = x.to_vector();
  Dsu dsu(inst_.num_vertices);
  return assign_pairs(inst_, ids, 0, dsu, nullptr);
}

// Exposed for the witness layer (declaration lives in witness.cpp).
bool hypergraphic_assign_pairs(const HypergraphicInstance& inst,
                               const std::vector<int>& ids,
                               std::vector<std::pair<int, int>>* chosen) {
  Dsu dsu(inst.num_vertices);
  return assign_pairs(inst, ids, 0, dsu, chosen);
}

// --------------------------------------------------------------------------
// Laminar
// --------------------------------------------------------------------------

LaminarMatroid::LaminarMatroid(LaminarInstance inst) : inst_(std::move(inst)) {
  if (inst_.sets.size() != inst_.caps.size()) bad("laminar: sets/caps size mismatch");
  for (size_t i = 0; i < inst_.sets.size(); ++i) {
    auto [lo, hi] = inst_.sets[i];
    if (lo < 0 || hi >= inst_.n || lo > hi)
      bad("laminar: interval [" + std::to_string(lo) + "," + std::to_string(hi) +
          "] out of range");
    if (inst_.caps[i] < 1) bad("laminar: capacity below 1");
  }
  for (size_t i = 0; i < inst_.sets.size(); ++i) {
    for (size_t j = i + 1; j < inst_.sets.size(); ++j) {
      auto [a, b] = inst_.sets[i];
      auto [c, d] = inst_.sets[j];
      bool disjoint = b < c || d < a;
      bool nested = (a <= c && d <= b) || (c <= a && b <= d);
      if (!disjoint && !nested)
        bad("laminar: intervals [" + std::to_string(a) + "," + std::to_string(b) +
            "] and [" + std::to_string(c) + "," + std::to_string(d) + "] cross");
      if (a == c && b == d) bad("laminar: duplicate interval");
    }
  }
  sets_of_.resize(inst_.n);
  for (size_t i = 0; i < inst_.sets.size(); ++i)
    for (int e = inst_.sets[i][0]; e <= inst_.sets[i][1]; ++e) sets_of_[e].push_back((int)i);
}

bool LaminarMatroid::independent(const ElementSet& x) const {
  std::vector<int> count(inst_.sets.size(), 0);
  bool ok = true;
  x.for_each([&](int e) {
    for (int i : sets_of_[e])
      if (++count[i] > inst_.caps[i]) ok = false;
  });
  return ok;
}

ElementSet LaminarMatroid::greedy_max(const std::vector<int>& candidates) const {
  std::vector<int> slack(inst_.sets.size());
  for (size_t i = 0; i < slack.size(); ++i) slack[i] = inst_.caps[i];
  ElementSet s;
  for (int e : candidates) {
    bool fits = true;
    for (int i : sets_of_[e])
      if (slack[i] == 0) { fits = false; break; }
    if (!fits) continue;
    s.insert(e);
    for (int i : sets_of_[e]) --slack[i];
  }
  return s;
}

std::optional<std::array<int, 2>> LaminarMatroid::join(int a, int b) const {
  if (a > b) std::swap(a, b);
  if (a <= -1 || b >= inst_.n) return std::nullopt;  // sentinel joins sit above the root
  std::optional<std::array<int, 2>> best;
  for (const auto& s : inst_.sets) {
    if (s[0] <= a && b <= s[1]) {
      if (!best || s[1] - s[0] < (*best)[1] - (*best)[0]) best = s;
    }
  }
  if (!best) best = std::array<int, 2>{0, inst_.n - 1};  // implicit root
  return best;
}

// --------------------------------------------------------------------------
// Transversal
// --------------------------------------------------------------------------

TransversalMatroid::TransversalMatroid(TransversalInstance inst) : inst_(std::move(inst)) {
  for (auto& nb : inst_.adj) {
    for (int l : nb) check_vertex(l, inst_.num_left, "transversal");
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
}

bool TransversalMatroid::try_augment(int elem, std::vector<uint64_t>& visited,
                                     std::vector<int>& left_match) const {
  for (int l : inst_.adj[elem]) {
    if (visited[l >> 6] >> (l & 63) & 1) continue;
    visited[l >> 6] |= uint64_t{1} << (l & 63);
    if (left_match[l] == -1 || try_augment(left_match[l], visited, left_match)) {
      left_match[l] = elem;
      return true;
    }
  }
  return false;
}

bool TransversalMatroid::independent(const ElementSet& x) const {
  std::vector<int> left_match(inst_.num_left, -1);
  std::vector<uint64_t> visited((inst_.num_left + 63) / 64);
  bool ok = true;
  x.for_each([&](int e) {
    if (!ok) return;
    std::fill(visited.begin(), visited.end(), 0);
    if (!try_augment(e, visited, left_match)) ok = false;
  });
  return ok;
}

ElementSet TransversalMatroid::greedy_max(const std::vector<int>& candidates) const {
  std::vector<int> left_match(inst_.num_left, -1);
  std::vector<uint64_t> visited((inst_.num_left + 63) / 64);
  ElementSet s;
  for (int e : candidates) {
    std::fill(visited.begin(), visited.end(), 0);
    if (try_augment(e, visited, left_match)) s.insert(e);
  }
  return s;
}

// --------------------------------------------------------------------------
// Gammoid (node-disjoint linking, or single-source capacitated flow)
// --------------------------------------------------------------------------

GammoidMatroid::GammoidMatroid(GammoidInstance inst) : inst_(std::move(inst)) {
  if (inst_.arc_caps.empty()) inst_.arc_caps.assign(inst_.arcs.size(), 1);
  if (inst_.arc_caps.size() != inst_.arcs.size()) bad("gammoid: arcs/caps size mismatch");
  for (auto [u, v] : inst_.arcs) {
    check_vertex(u, inst_.num_vertices, "gammoid");
    check_vertex(v, inst_.num_vertices, "gammoid");
  }
  for (int c : inst_.arc_caps) {
    if (c < 1) bad("gammoid: arc capacity below 1");
    if (inst_.node_disjoint && c != 1) bad("gammoid: node-disjoint mode needs unit capacities");
  }
  for (int s : inst_.sources) check_vertex(s, inst_.num_vertices, "gammoid");
  if (!inst_.node_disjoint && inst_.sources.size() != 1)
    bad("gammoid: flow mode needs a single source");
  if (inst_.mu < 1) bad("gammoid: exchangeability bound below 1");

  // Every terminal must be reachable from the source side.
  std::vector<std::vector<int>> out(inst_.num_vertices);
  for (auto [u, v] : inst_.arcs) out[u].push_back(v);
  std::vector<char> seen(inst_.num_vertices, 0);
  std::queue<int> q;
  for (int s : inst_.sources) {
    if (!seen[s]) {
      seen[s] = 1;
      q.push(s);
    }
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : out[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        q.push(v);
      }
    }
  }
  for (int t : inst_.terminals) {
    check_vertex(t, inst_.num_vertices, "gammoid");
    if (!seen[t])
      bad("gammoid: terminal " + std::to_string(t) + " unreachable from the sources");
  }
}

namespace {

// Plain BFS max-flow on an adjacency-list residual graph, small scales only.
struct FlowNet {
  struct Arc {
    int to, cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out;

  explicit FlowNet(int n) : out(n) {}
  void add(int u, int v, int cap) {
    out[u].push_back((int)arcs.size());
    arcs.push_back({v, cap});
    out[v].push_back((int)arcs.size());
    arcs.push_back({u, 0});
  }
  int max_flow(int s, int t, int want) {
    int total = 0;
    while (total < want) {
      std::vector<int> pred_arc(out.size(), -1);
      std::queue<int> q;
      q.push(s);
      pred_arc[s] = -2;
      while (!q.empty() && pred_arc[t] == -1) {
        int u = q.front();
        q.pop();
        for (int a : out[u]) {
          if (arcs[a].cap > 0 && pred_arc[arcs[a].to] == -1) {
            pred_arc[arcs[a].to] = a;
            q.push(arcs[a].to);
          }
        }
      }
      if (pred_arc[t] == -1) break;
      int bottleneck = want - total;
      for (int v = t; v != s;) {
        int a = pred_arc[v];
        bottleneck = std::min(bottleneck, arcs[a].cap);
        v = arcs[a ^ 1].to;
      }
      for (int v = t; v != s;) {
        int a = pred_arc[v];
        arcs[a].cap -= bottleneck;
        arcs[a ^ 1].cap += bottleneck;
        v = arcs[a ^ 1].to;
      }
      total += bottleneck;
    }
    return total;
  }
};

}  // namespace

bool GammoidMatroid::independent(const ElementSet& x) const {
  int nv = inst_.num_vertices;
  int demand = x.size();
  if (demand == 0) return true;
  if (inst_.node_disjoint) {
    // Split every vertex: in-node v, out-node nv+v, capacity 1 across.
    FlowNet net(2 * nv + 2);
    int src = 2 * nv, snk = 2 * nv + 1;
    for (int v = 0; v < nv; ++v) net.add(v, nv + v, 1);
    for (auto [u, v] : inst_.arcs) net.add(nv + u, v, 1);
    for (int s : inst_.sources) net.add(src, s, 1);
    x.for_each([&](int e) { net.add(nv + inst_.terminals[e], snk, 1); });
    return net.max_flow(src, snk, demand) == demand;
  }
  FlowNet net(nv + 1);
  int snk = nv;
  for (size_t i = 0; i < inst_.arcs.size(); ++i)
    net.add(inst_.arcs[i].first, inst_.arcs[i].second, inst_.arc_caps[i]);
  x.for_each([&](int e) { net.add(inst_.terminals[e], snk, 1); });
  return net.max_flow(inst_.sources[0], snk, demand) == demand;
}

// --------------------------------------------------------------------------
// Matching matroid
// --------------------------------------------------------------------------

MatchingMatroid::MatchingMatroid(MatchingInstance inst) : inst_(std::move(inst)) {
  if (inst_.num_vertices > 20) bad("matching matroid limited to 20 host vertices");
  adj_.assign(inst_.num_vertices, {});
  for (auto [u, v] : inst_.edges) {
    check_vertex(u, inst_.num_vertices, "matching");
    check_vertex(v, inst_.num_vertices, "matching");
    if (u == v) bad("matching: self-loop edge");
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  std::vector<char> taken(inst_.num_vertices, 0);
  for (int t : inst_.terminals) {
    check_vertex(t, inst_.num_vertices, "matching");
    if (taken[t]) bad("matching: two elements on terminal vertex " + std::to_string(t));
    taken[t] = 1;
  }
}

namespace {

// Can the vertices in `want` (bitmask) all be covered by one matching?
// Exhaustive search with memoisation on (lowest uncovered wanted vertex,
// used-vertex mask); sound on general graphs at the guarded scale.
bool cover_search(const std::vector<std::vector<int>>& adj, uint32_t want, uint32_t used,
                  std::vector<signed char>& memo) {
  uint32_t pending = want & ~used;
  if (!pending) return true;
  int x = std::countr_zero(pending);
  uint32_t key = used;
  if (memo[key] != -1) return memo[key];
  bool ok = false;
  for (int y : adj[x]) {
    if (used >> y & 1) continue;
    if (cover_search(adj, want, used | (1u << x) | (1u << y), memo)) {
      ok = true;
      break;
    }
  }
  memo[key] = ok;
  return ok;
}

}  // namespace

bool MatchingMatroid::independent(const ElementSet& x) const {
  uint32_t want = 0;
  x.for_each([&](int e) { want |= 1u << inst_.terminals[e]; });
  std::vector<signed char> memo(size_t{1} << inst_.num_vertices, -1);
  return cover_search(adj_, want, 0, memo);
}

// --------------------------------------------------------------------------
// Sparse linear over GF(p)
// --------------------------------------------------------------------------

SparseLinearMatroid::SparseLinearMatroid(SparseLinearInstance inst)
    : inst_(std::move(inst)) {
  if (inst_.field_p < 2) bad("linear: field order below 2");
  for (int d = 2; d * d <= inst_.field_p; ++d) {
    if (inst_.field_p % d == 0) bad("linear: field order must be prime");
  }
  for (const auto& col : inst_.columns) {
    if ((int)col.size() > inst_.sparsity_k)
      bad("linear: column exceeds declared sparsity");
    std::vector<int> rows_seen;
    for (auto [r, val] : col) {
      if (r < 0 || r >= inst_.rows) bad("linear: row index out of range");
      if (val <= 0 || val >= inst_.field_p) bad("linear: entry outside 1..p-1");
      rows_seen.push_back(r);
    }
    std::sort(rows_seen.begin(), rows_seen.end());
    if (std::adjacent_find(rows_seen.begin(), rows_seen.end()) != rows_seen.end())
      bad("linear: repeated row in a column");
  }
}

namespace {

// Dense elimination state over GF(p); one pivot per accepted column.
struct Elim {
  int rows, p;
  std::vector<std::vector<int>> pivots;  // reduced vectors
  std::vector<int> pivot_row;

  Elim(int rows, int p) : rows(rows), p(p) {}

  static int inv_mod(int a, int p) {
    int r = 1, e = p - 2;
    long long base = a;
    while (e) {
      if (e & 1) r = (int)(r * base % p);
      base = base * base % p;
      e >>= 1;
    }
    return r;
  }

  // Reduces v in place; returns false if it vanishes, otherwise installs it
  // as a new pivot.
  bool add(std::vector<int> v) {
    for (size_t i = 0; i < pivots.size(); ++i) {
      int c = v[pivot_row[i]];
      if (!c) continue;
      for (int r = 0; r < rows; ++r) v[r] = (int)((v[r] + (long long)(p - c) * pivots[i][r]) % p);
    }
    int pr = -1;
    for (int r = 0; r < rows; ++r) {
      if (v[r]) {
        pr = r;
        break;
      }
    }
    if (pr == -1) return false;
    int inv = inv_mod(v[pr], p);
    for (int r = 0; r < rows; ++r) v[r] = (int)((long long)v[r] * inv % p);
    pivots.push_back(std::move(v));
    pivot_row.push_back(pr);
    return true;
  }
};

// GF(2) fast path with bitmask rows (rows <= 64).
struct Elim2 {
  std::vector<uint64_t> pivots;
  bool add(uint64_t v) {
    for (uint64_t pv : pivots) {
      uint64_t low = pv & -pv;
      if (v & low) v ^= pv;
    }
    if (!v) return false;
    pivots.push_back(v);
    return true;
  }
};

}  // namespace

bool SparseLinearMatroid::independent(const ElementSet& x) const {
  if (inst_.field_p == 2 && inst_.rows <= 64) {
    Elim2 el;
    bool ok = true;
    x.for_each([&](int e) {
      if (!ok) return;
      uint64_t v = 0;
      for (auto [r, val] : inst_.columns[e]) v |= uint64_t{1} << r;
      if (!el.add(v)) ok = false;
    });
    return ok;
  }
  Elim el(inst_.rows, inst_.field_p);
  bool ok = true;
  x.for_each([&](int e) {
    if (!ok) return;
    std::vector<int> v(inst_.rows, 0);
    for (auto [r, val] : inst_.columns[e]) v[r] = val;
    if (!el.add(std::move(v))) ok = false;
  });
  return ok;
}

ElementSet SparseLinearMatroid::greedy_max(const std::vector<int>& candidates) const {
  ElementSet s;
  if (inst_.field_p == 2 && inst_.rows <= 64) {
    Elim2 el;
    for (int e : candidates) {
      uint64_t v = 0;
      for (auto [r, val] : inst_.columns[e]) v |= uint64_t{1} << r;
      if (el.add(v)) s.insert(e);
    }
    return s;
  }
  Elim el(inst_.rows, inst_.field_p);
  for (int e : candidates) {
    std::vector<int> v(inst_.rows, 0);
    for (auto [r, val] : inst_.columns[e]) v[r] = val;
    if (el.add(std::move(v))) s.insert(e);
  }
  return s;
}

// --------------------------------------------------------------------------

OrderedMatroid make_ordered(MatroidPtr m, ValueOrder order) {
  if (order.n() != m->id_space())
    throw std::invalid_argument("value order size differs from the id space");
  return {std::move(m), std::move(order)};
}

OrderedMatroid ordered_uniform(UniformInstance inst, ValueOrder order) {
  return make_ordered(std::make_shared<UniformMatroid>(inst), std::move(order));
}

}  // namespace msp
