#include "msp/witness.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <stdexcept>

namespace msp {

// Defined in zoo.cpp next to the independence oracle so both stay in sync.
bool hypergraphic_assign_pairs(const HypergraphicInstance& inst,
                               const std::vector<int>& ids,
                               std::vector<std::pair<int, int>>* chosen);

namespace {

std::vector<int> by_value(const ValueOrder& order, const ElementSet& x) {
  std::vector<int> ids = x.to_vector();
  std::sort(ids.begin(), ids.end(),
            [&](int a, int b) { return order.rank_of(a) < order.rank_of(b); });
  return ids;
}

bool kuhn_augment(int e, const std::vector<std::vector<int>>& options,
                  std::vector<char>& visited, std::vector<int>& match) {
  for (int v : options[e]) {
    if (visited[v]) continue;
    visited[v] = 1;
    if (match[v] == -1 || kuhn_augment(match[v], options, visited, match)) {
      match[v] = e;
      return true;
    }
  }
  return false;
}

// match[v] = element matched to v after inserting the ids in the given order,
// scanning each element's option list front to back; false if some id cannot
// be matched.
bool kuhn_match(int num_targets, const std::vector<int>& ids,
                const std::vector<std::vector<int>>& options, std::vector<int>& match) {
  match.assign(num_targets, -1);
  for (int e : ids) {
    std::vector<char> visited(num_targets, 0);
    if (!kuhn_augment(e, options, visited, match)) return false;
  }
  return true;
}

}  // namespace

std::vector<int> matching_witness(const TransversalMatroid& m, const ValueOrder& order,
                                  const ElementSet& x) {
  const auto& inst = m.instance();
  std::vector<int> left_match;
  if (!kuhn_match(inst.num_left, by_value(order, x), inst.adj, left_match))
    throw std::invalid_argument("matching witness: dependent set");
  std::vector<int> partner(m.id_space(), -1);
  for (int l = 0; l < inst.num_left; ++l) {
    if (left_match[l] != -1) partner[left_match[l]] = l;
  }
  return partner;
}

std::vector<std::vector<int>> path_system_witness(const GammoidMatroid& m,
                                                  const ElementSet& x) {
  const auto& inst = m.instance();
  if (!inst.node_disjoint)
    throw std::invalid_argument("path witness needs the node-disjoint presentation");
  int nv = inst.num_vertices;

  // Restrict to arcs on some source-to-x route, so the witness depends only
  // on the part of the graph the set itself reveals.
  std::vector<char> from_src(nv, 0), to_x(nv, 0);
  {
    std::vector<std::vector<int>> fwd(nv), bwd(nv);
    for (auto [u, v] : inst.arcs) {
      fwd[u].push_back(v);
      bwd[v].push_back(u);
    }
    auto sweep = [](const std::vector<std::vector<int>>& adj, std::vector<char>& seen,
                    std::vector<int> frontier) {
      while (!frontier.empty()) {
        int u = frontier.back();
        frontier.pop_back();
        for (int v : adj[u]) {
          if (!seen[v]) {
            seen[v] = 1;
            frontier.push_back(v);
          }
        }
      }
    };
    std::vector<int> starts;
    for (int s : inst.sources) {
      if (!from_src[s]) {
        from_src[s] = 1;
        starts.push_back(s);
      }
    }
    sweep(fwd, from_src, starts);
    starts.clear();
    x.for_each([&](int e) {
      int t = inst.terminals[e];
      if (!to_x[t]) {
        to_x[t] = 1;
        starts.push_back(t);
      }
    });
    sweep(bwd, to_x, starts);
  }

  // Unit-capacity flow with every vertex split into in-node v / out-node nv+v.
  // Arc insertion order (splits, graph arcs, source arcs, sink arcs by
  // ascending element id) pins the BFS augmentations, so the final flow is a
  // function of x alone.
  struct Arc {
    int to, cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out(2 * nv + 2);
  auto add = [&](int u, int v) {
    out[u].push_back((int)arcs.size());
    arcs.push_back({v, 1});
    out[v].push_back((int)arcs.size());
    arcs.push_back({u, 0});
  };
  int src = 2 * nv, snk = 2 * nv + 1;
  for (int v = 0; v < nv; ++v) add(v, nv + v);
  for (auto [u, v] : inst.arcs) {
    if (from_src[u] && to_x[v]) add(nv + u, v);
  }
  for (int s : inst.sources) add(src, s);
  x.for_each([&](int e) { add(nv + inst.terminals[e], snk); });

  for (int unit = 0; unit < x.size(); ++unit) {
    std::vector<int> pred(out.size(), -1);
    std::queue<int> q;
    q.push(src);
    pred[src] = -2;
    while (!q.empty() && pred[snk] == -1) {
      int u = q.front();
      q.pop();
      for (int a : out[u]) {
        if (arcs[a].cap > 0 && pred[arcs[a].to] == -1) {
          pred[arcs[a].to] = a;
          q.push(arcs[a].to);
        }
      }
    }
    if (pred[snk] == -1) throw std::invalid_argument("path witness: dependent set");
    for (int v = snk; v != src;) {
      int a = pred[v];
      arcs[a].cap -= 1;
      arcs[a ^ 1].cap += 1;
      v = arcs[a ^ 1].to;
    }
  }

  // Peel the unit through each terminal by walking the in-flow backwards; the
  // split arcs force one unit per vertex, so every step is unique.
  std::vector<std::vector<int>> paths(m.id_space());
  x.for_each([&](int e) {
    std::vector<int> rev{inst.terminals[e]};
    int w = inst.terminals[e];
    while (true) {
      int from = -1;
      for (int a : out[w]) {
        if ((a & 1) && arcs[a].cap > 0) {
          from = arcs[a].to;
          break;
        }
      }
      if (from == src) break;
      w = from - nv;
      rev.push_back(w);
    }
    paths[e].assign(rev.rbegin(), rev.rend());
  });
  return paths;
}

namespace {

bool cover_search_edges(const std::vector<std::vector<int>>& adj, uint32_t want,
                        uint32_t used, std::vector<signed char>& dead,
                        std::vector<std::array<int, 2>>& edges) {
  uint32_t pending = want & ~used;
  if (!pending) return true;
  if (dead[used]) return false;
  int v = std::countr_zero(pending);
  for (int y : adj[v]) {
    if (used >> y & 1) continue;
    edges.push_back({v, y});
    if (cover_search_edges(adj, want, used | (1u << v) | (1u << y), dead, edges))
      return true;
    edges.pop_back();
  }
  dead[used] = 1;
  return false;
}

}  // namespace

std::vector<std::array<int, 2>> cover_witness(const MatchingMatroid& m, const ElementSet& x) {
  const auto& inst = m.instance();
  std::vector<std::vector<int>> adj(inst.num_vertices);
  for (auto [u, v] : inst.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  uint32_t want = 0;
  x.for_each([&](int e) { want |= 1u << inst.terminals[e]; });
  std::vector<signed char> dead(size_t{1} << inst.num_vertices, 0);
  std::vector<std::array<int, 2>> edges;
  if (!cover_search_edges(adj, want, 0, dead, edges))
    throw std::invalid_argument("cover witness: dependent set");
  std::vector<int> edge_at(inst.num_vertices, -1);
  for (size_t i = 0; i < edges.size(); ++i) {
    edge_at[edges[i][0]] = (int)i;
    edge_at[edges[i][1]] = (int)i;
  }
  std::vector<std::array<int, 2>> cover(m.id_space(), {-1, -1});
  x.for_each([&](int e) { cover[e] = edges[edge_at[inst.terminals[e]]]; });
  return cover;
}

std::vector<std::array<int, 2>> pair_witness(const GraphicMatroid& m, const ElementSet& x) {
  std::vector<std::array<int, 2>> pair_for(m.id_space(), {-1, -1});
  x.for_each([&](int e) {
    auto [u, v] = m.instance().edges[e];
    pair_for[e] = {std::min(u, v), std::max(u, v)};
  });
  return pair_for;
}

std::vector<std::array<int, 2>> pair_witness(const HypergraphicMatroid& m,
                                             const ValueOrder& order, const ElementSet& x) {
  std::vector<int> ids = by_value(order, x);
  std::vector<std::pair<int, int>> chosen;
  if (!hypergraphic_assign_pairs(m.instance(), ids, &chosen))
    throw std::invalid_argument("pair witness: dependent set");
  std::vector<std::array<int, 2>> pair_for(m.id_space(), {-1, -1});
  for (size_t i = 0; i < ids.size(); ++i)
    pair_for[ids[i]] = {chosen[i].first, chosen[i].second};
  return pair_for;
}

std::vector<std::array<int, 2>> orient_away_from_roots(
    int num_vertices, const ElementSet& x, const std::vector<std::array<int, 2>>& pair_for) {
  std::vector<std::vector<std::pair<int, int>>> adj(num_vertices);  // (other end, element)
  x.for_each([&](int e) {
    auto [u, v] = pair_for[e];
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
  });
  std::vector<std::array<int, 2>> arc(pair_for.size(), {-1, -1});
  std::vector<char> seen(num_vertices, 0);
  for (int root = 0; root < num_vertices; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [v, e] : adj[u]) {
        if (arc[e][0] != -1) continue;  // the edge we arrived by
        if (seen[v]) throw std::logic_error("orientation: pairs close a cycle");
        seen[v] = 1;
        arc[e] = {u, v};
        stack.push_back(v);
      }
    }
  }
  return arc;
}

std::vector<int> circuit_rows(const SparseLinearMatroid& m, int e) {
  std::vector<int> rows;
  for (auto [r, val] : m.instance().columns[e]) rows.push_back(r);
  std::sort(rows.begin(), rows.end());
  return rows;
}

std::vector<int> frame_injection(const SparseLinearMatroid& m, const ValueOrder& order,
                                 const ElementSet& x) {
  std::vector<std::vector<int>> options(m.id_space());
  x.for_each([&](int e) { options[e] = circuit_rows(m, e); });
  std::vector<int> row_match;
  if (!kuhn_match(m.instance().rows, by_value(order, x), options, row_match))
    throw std::logic_error("frame injection: no system of distinct rows");
  std::vector<int> injection(m.id_space(), -1);
  for (int r = 0; r < m.instance().rows; ++r) {
    if (row_match[r] != -1) injection[row_match[r]] = r;
  }
  return injection;
}

int pre_in(const ElementSet& x, int y) {
  for (int v = y - 1; v >= 0; --v) {
    if (x.contains(v)) return v;
  }
  return -1;
}

int nex_in(const ElementSet& x, int y, int n) {
  for (int v = y + 1; v < n; ++v) {
    if (x.contains(v)) return v;
  }
  return n;
}

int representative(const LaminarMatroid& m, const ElementSet& j, int y) {
  if (j.contains(y)) return y;
  int n = m.instance().n;
  int b = pre_in(j, y);
  int c = nex_in(j, y, n);
  if (b == -1 && c == n)
    throw std::invalid_argument("representative: empty neighbour set");
  if (b == -1) return c;
  if (c == n) return b;
  auto jb = *m.join(y, b);
  auto jc = *m.join(y, c);
  bool left_strictly_lower = jc[0] <= jb[0] && jb[1] <= jc[1] && jb != jc;
  return left_strictly_lower ? b : c;
}

std::array<int, 4> neighbor_quad(const ElementSet& x, int r, int n) {
  int b = pre_in(x, r);
  int c = nex_in(x, r, n);
  return {pre_in(x, b), b, c, nex_in(x, c, n)};
}

std::array<int, 3> representative_triple(const LaminarMatroid& m, const ElementSet& x,
                                         int r) {
  int pi = representative(m, x, r);
  return {pre_in(x, pi), pi, nex_in(x, pi, m.instance().n)};
}

}  // namespace msp
