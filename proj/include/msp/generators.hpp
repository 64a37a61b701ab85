#pragma once

#include <map>
#include <string>
#include <variant>

#include "msp/rng.hpp"
#include "msp/zoo.hpp"

namespace msp {

// ---------------------------------------------------------------------------
// Instance generation: random families plus the hand-crafted worst cases.
// Element ids double as value ranks everywhere (id 0 is the most valuable),
// so every built instance carries the identity order.
// ---------------------------------------------------------------------------

using AnyInstance =
    std::variant<UniformInstance, PartitionInstance, GraphicInstance, HypergraphicInstance,
                 LaminarInstance, TransversalInstance, GammoidInstance, MatchingInstance,
                 SparseLinearInstance>;

struct BuiltInstance {
  std::string family;  // oracle family: uniform, partition, graphic, ...
  AnyInstance instance;
  OrderedMatroid ordered;
  int rank = 0;
};

// Wraps a concrete instance in its oracle with the identity value order; the
// family label is derived from the instance type.
BuiltInstance build_instance(AnyInstance instance);

// -- random families ----------------------------------------------------------

// Random recursive tree plus uniformly random extra edges; edge ids shuffled
// so value rank is independent of the construction.
GraphicInstance random_connected_graph(int vertices, int edges, Rng& rng);

// Random recursive interval splits; every created interval gets a uniform
// cap in [1, size].
LaminarInstance random_laminar(int n, Rng& rng);

// Each of the n elements is adjacent to each left vertex with prob edge_prob.
TransversalInstance random_bipartite(int n, int left, double edge_prob, Rng& rng);

// Two-layer DAG (sources -> middle -> terminals) with arcs drawn iid; unit
// node capacities. The exchangeability bound is measured exhaustively and
// declared on the instance, so keep the sizes small.
GammoidInstance random_gammoid(int terminals, int middle, int sources, double arc_prob,
                               Rng& rng);

// Single-source arc-capacitated fan whose terminal drawing order equals the
// id order: source -> spread internal nodes -> contiguous terminal ranges.
// Arc capacities uniform in [1, 3].
GammoidInstance random_flow_fan(int terminals, int spread, Rng& rng);

// Columns with exactly `sparsity` nonzeros on distinct random rows, values
// uniform in [1, field_p).
SparseLinearInstance random_sparse_linear(int rows, int cols, int sparsity, int field_p,
                                          Rng& rng);

// -- worst-case constructions --------------------------------------------------

// Top m elements free, then `blocks` blocks of m consecutive elements with
// one pick each: greedy keeps whole-set quality but misses most block
// leaders. n = m (blocks + 1), rank = m + blocks.
PartitionInstance free_blocks_instance(int m, int blocks);

// One capacity-1 block over the top m elements plus m free singletons:
// greedy rarely keeps the overall best. n = 2m, rank = m + 1.
PartitionInstance top_block_instance(int m);

// Two nested caps: the better half is capped at 1 while the whole ground is
// capped at rho; n = 2 rho^3. Price thresholds either admit a flood of weak
// elements or nearly nothing.
LaminarInstance tpa_adversary(int rho);

// Max over independent X, outside element r and source->terminal(r) path Q
// of the number of witness paths of X sharing a vertex with Q. Exhaustive;
// guarded to small instances.
int brute_force_exchangeability(const GammoidInstance& inst);

// -- keyed dispatch -------------------------------------------------------------

// family: uniform | graphic | laminar | transversal | gammoid | flow-fan |
//         sparse-linear | free-blocks | top-block | tpa-adversary
// params hold the generator arguments by name; missing keys fall back to
// documented defaults, unknown families throw.
struct InstanceSpec {
  std::string family;
  std::map<std::string, double> params;
};

BuiltInstance generate_instance(const InstanceSpec& spec, Rng& rng);

}  // namespace msp
