#include "msp/generators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>

#include "msp/witness.hpp"

namespace msp {
namespace {

template <class M, class I>
BuiltInstance wrap(const char* family, I inst) {
  auto m = std::make_shared<M>(inst);
  OrderedMatroid ordered = make_ordered(m, ValueOrder::identity(m->id_space()));
  int r = rank(*ordered.matroid, ordered.ground());
  return {family, AnyInstance(std::move(inst)), std::move(ordered), r};
}

double get_param(const InstanceSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

int int_param(const InstanceSpec& spec, const std::string& key, int fallback) {
  return (int)std::llround(get_param(spec, key, fallback));
}

}  // namespace

BuiltInstance build_instance(AnyInstance instance) {
  return std::visit(
      [](auto inst) -> BuiltInstance {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, UniformInstance>)
          return wrap<UniformMatroid>("uniform", std::move(inst));
        else if constexpr (std::is_same_v<T, PartitionInstance>)
          return wrap<PartitionMatroid>("partition", std::move(inst));
        else if constexpr (std::is_same_v<T, GraphicInstance>)
          return wrap<GraphicMatroid>("graphic", std::move(inst));
        else if constexpr (std::is_same_v<T, HypergraphicInstance>)
          return wrap<HypergraphicMatroid>("hypergraphic", std::move(inst));
        else if constexpr (std::is_same_v<T, LaminarInstance>)
          return wrap<LaminarMatroid>("laminar", std::move(inst));
        else if constexpr (std::is_same_v<T, TransversalInstance>)
          return wrap<TransversalMatroid>("transversal", std::move(inst));
        else if constexpr (std::is_same_v<T, GammoidInstance>)
          return wrap<GammoidMatroid>("gammoid", std::move(inst));
        else if constexpr (std::is_same_v<T, MatchingInstance>)
          return wrap<MatchingMatroid>("matching", std::move(inst));
        else
          return wrap<SparseLinearMatroid>("sparse-linear", std::move(inst));
      },
      std::move(instance));
}

GraphicInstance random_connected_graph(int vertices, int edges, Rng& rng) {
  if (vertices < 1 || edges < vertices - 1)
    throw std::invalid_argument("graph generator needs edges >= vertices - 1");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < vertices; ++i) e.emplace_back(rng.next_int(i), i);
  while ((int)e.size() < edges) {
    int u = rng.next_int(vertices);
    int w = rng.next_int(vertices - 1);
    if (w >= u) ++w;  // no self loops, parallels fine
    e.emplace_back(u, w);
  }
  for (int i = (int)e.size() - 1; i > 0; --i) std::swap(e[i], e[rng.next_int(i + 1)]);
  return {vertices, std::move(e)};
}

LaminarInstance random_laminar(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("laminar generator needs n >= 1");
  LaminarInstance inst;
  inst.n = n;
  auto rec = [&](auto&& self, int lo, int hi) -> void {
    if (hi <= lo) return;  // singletons stay implicit
    inst.sets.push_back({lo, hi});
    inst.caps.push_back(1 + rng.next_int(hi - lo + 1));
    if (rng.next_double() < 0.85) {
      int cut = lo + rng.next_int(hi - lo);
      self(self, lo, cut);
      self(self, cut + 1, hi);
    }
  };
  rec(rec, 0, n - 1);
  return inst;
}

TransversalInstance random_bipartite(int n, int left, double edge_prob, Rng& rng) {
  TransversalInstance inst;
  inst.num_left = left;
  inst.adj.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < left; ++j) {
      if (rng.next_double() < edge_prob) inst.adj[i].push_back(j);
    }
  }
  return inst;
}

GammoidInstance random_gammoid(int terminals, int middle, int sources, double arc_prob,
                               Rng& rng) {
  GammoidInstance g;
  g.num_vertices = sources + middle + terminals;
  for (int s = 0; s < sources; ++s) g.sources.push_back(s);
  for (int t = 0; t < terminals; ++t) g.terminals.push_back(sources + middle + t);
  for (int m = 0; m < middle; ++m) {
    int forced = rng.next_int(sources);  // keep every middle node reachable
    for (int s = 0; s < sources; ++s) {
      if (s == forced || rng.next_double() < arc_prob) g.arcs.emplace_back(s, sources + m);
    }
  }
  for (int t = 0; t < terminals; ++t) {
    int forced = rng.next_int(middle);  // and every terminal
    for (int m = 0; m < middle; ++m) {
      if (m == forced || rng.next_double() < arc_prob)
        g.arcs.emplace_back(sources + m, sources + middle + t);
    }
  }
  g.mu = std::max(1, brute_force_exchangeability(g));
  return g;
}

GammoidInstance random_flow_fan(int terminals, int spread, Rng& rng) {
  if (terminals < 1 || spread < 1 || spread > terminals)
    throw std::invalid_argument("flow fan needs 1 <= spread <= terminals");
  GammoidInstance g;
  g.num_vertices = 1 + spread + terminals;
  g.sources = {0};
  g.node_disjoint = false;
  for (int t = 0; t < terminals; ++t) g.terminals.push_back(1 + spread + t);
  for (int r = 0; r < spread; ++r) {
    g.arcs.emplace_back(0, 1 + r);
    g.arc_caps.push_back(1 + rng.next_int(3));
    int lo = r * terminals / spread, hi = (r + 1) * terminals / spread;
    for (int t = lo; t < hi; ++t) {
      g.arcs.emplace_back(1 + r, 1 + spread + t);
      g.arc_caps.push_back(1);
    }
  }
  return g;
}

SparseLinearInstance random_sparse_linear(int rows, int cols, int sparsity, int field_p,
                                          Rng& rng) {
  if (sparsity > rows) throw std::invalid_argument("sparsity exceeds row count");
  SparseLinearInstance inst;
  inst.rows = rows;
  inst.field_p = field_p;
  inst.sparsity_k = sparsity;
  for (int c = 0; c < cols; ++c) {
    std::set<int> picked;
    while ((int)picked.size() < sparsity) picked.insert(rng.next_int(rows));
    std::vector<std::pair<int, int>> col;
    for (int r : picked) col.emplace_back(r, field_p > 2 ? 1 + rng.next_int(field_p - 1) : 1);
    inst.columns.push_back(std::move(col));
  }
  return inst;
}

PartitionInstance free_blocks_instance(int m, int blocks) {
  if (m < 1 || blocks < 0) throw std::invalid_argument("bad block shape");
  PartitionInstance inst;
  inst.n = m * (blocks + 1);
  for (int j = 0; j < blocks; ++j) {
    std::vector<int> part;
    for (int i = 0; i < m; ++i) part.push_back(m + j * m + i);
    inst.parts.push_back(std::move(part));
    inst.caps.push_back(1);
  }
  return inst;
}

PartitionInstance top_block_instance(int m) {
  if (m < 1) throw std::invalid_argument("bad block size");
  PartitionInstance inst;
  inst.n = 2 * m;
  std::vector<int> top;
  for (int i = 0; i < m; ++i) top.push_back(i);
  inst.parts.push_back(std::move(top));
  inst.caps.push_back(1);
  return inst;
}

LaminarInstance tpa_adversary(int rho) {
  if (rho < 1) throw std::invalid_argument("bad adversary rank");
  int n = 2 * rho * rho * rho;
  return {n, {{0, n / 2 - 1}, {0, n - 1}}, {1, rho}};
}

int brute_force_exchangeability(const GammoidInstance& inst) {
  int n = (int)inst.terminals.size();
  if (!inst.node_disjoint || n > 12 || inst.num_vertices > 24)
    throw std::invalid_argument("exchangeability probe needs a small node-disjoint instance");
  GammoidMatroid g(inst);
  std::vector<std::vector<int>> out(inst.num_vertices);
  for (auto [u, v] : inst.arcs) out[u].push_back(v);

  // all simple source -> terminal(r) walks, per element
  std::vector<std::vector<std::set<int>>> walks(n);
  std::vector<int> cur;
  std::vector<char> used(inst.num_vertices, 0);
  auto dfs = [&](auto&& self, int u, int target, std::vector<std::set<int>>& sink) -> void {
    cur.push_back(u);
    used[u] = 1;
    if (u == target) sink.emplace_back(cur.begin(), cur.end());
    else
      for (int v : out[u]) {
        if (!used[v]) self(self, v, target, sink);
      }
    used[u] = 0;
    cur.pop_back();
  };
  for (int r = 0; r < n; ++r) {
    for (int s : inst.sources) dfs(dfs, s, inst.terminals[r], walks[r]);
  }

  int mu = 0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    ElementSet x;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) x.insert(i);
    }
    if (!g.independent(x)) continue;
    auto paths = path_system_witness(g, x);
    for (int r = 0; r < n; ++r) {
      if (x.contains(r)) continue;
      for (const auto& q : walks[r]) {
        int hit = 0;
        x.for_each([&](int e) {
          for (int v : paths[e]) {
            if (q.count(v)) {
              ++hit;
              break;
            }
          }
        });
        mu = std::max(mu, hit);
      }
    }
  }
  return mu;
}

BuiltInstance generate_instance(const InstanceSpec& spec, Rng& rng) {
  const std::string& f = spec.family;
  if (f == "uniform")
    return build_instance(
        UniformInstance{int_param(spec, "n", 8), int_param(spec, "rho", 3)});
  if (f == "graphic")
    return build_instance(random_connected_graph(int_param(spec, "vertices", 8),
                                                 int_param(spec, "edges", 12), rng));
  if (f == "laminar") return build_instance(random_laminar(int_param(spec, "n", 16), rng));
  if (f == "transversal")
    return build_instance(random_bipartite(int_param(spec, "n", 8),
                                           int_param(spec, "left", 8),
                                           get_param(spec, "edge_prob", 0.3), rng));
  if (f == "gammoid")
    return build_instance(random_gammoid(int_param(spec, "terminals", 5),
                                         int_param(spec, "middle", 4),
                                         int_param(spec, "sources", 2),
                                         get_param(spec, "arc_prob", 0.5), rng));
  if (f == "flow-fan")
    return build_instance(
        random_flow_fan(int_param(spec, "terminals", 6), int_param(spec, "spread", 3), rng));
  if (f == "sparse-linear")
    return build_instance(random_sparse_linear(
        int_param(spec, "rows", 6), int_param(spec, "cols", 10),
        int_param(spec, "sparsity", 3), int_param(spec, "field", 2), rng));
  if (f == "free-blocks")
    return build_instance(
        free_blocks_instance(int_param(spec, "m", 2), int_param(spec, "blocks", 4)));
  if (f == "top-block") return build_instance(top_block_instance(int_param(spec, "m", 4)));
  if (f == "tpa-adversary")
    return build_instance(tpa_adversary(int_param(spec, "rho", 3)));
  throw std::invalid_argument("unknown instance family: " + f);
}

}  // namespace msp
