#pragma once

#include <array>
#include <vector>

#include "msp/matroid.hpp"
#include "msp/zoo.hpp"

namespace msp {

// Canonical certificates attached to an independent set: the matching, path
// system, cover, orientation or injection exhibiting its independence. Every
// function here is a pure function of (instance, value order, queried set);
// the online selection rules and the replay checker both rely on recomputing
// bit-identical witnesses for the same set at different times.

// -- transversal -------------------------------------------------------------
// partner[e] = left vertex matched to e, -1 outside x. Elements are matched
// in value order; augmenting scans try left vertices in ascending id order.
// Throws std::invalid_argument when x is dependent.
std::vector<int> matching_witness(const TransversalMatroid& m, const ValueOrder& order,
                                  const ElementSet& x);

// -- gammoid (node-disjoint mode only) ----------------------------------------
// paths[e] = vertex walk from a source to terminal(e), empty outside x; the
// walks are pairwise node-disjoint. Deterministic: augmentation scans arcs in
// input order and the decomposition peels terminals in ascending element id.
std::vector<std::vector<int>> path_system_witness(const GammoidMatroid& m,
                                                  const ElementSet& x);

// -- matching matroid ----------------------------------------------------------
// cover[e] = {u, v} host edge covering terminal(e) in the canonical cover,
// {-1, -1} outside x. First solution found by the deterministic search that
// always extends from the lowest uncovered terminal vertex.
std::vector<std::array<int, 2>> cover_witness(const MatchingMatroid& m, const ElementSet& x);

// -- graphic / hypergraphic ------------------------------------------------------
// pair_for[e] = the two host vertices the element contributes to the witness
// forest, {-1, -1} outside x. Graphic: the edge's own endpoints. Hypergraphic:
// canonical backtracking choice of one pair per hyperedge, elements processed
// in value order and pairs tried in lexicographic order.
std::vector<std::array<int, 2>> pair_witness(const GraphicMatroid& m, const ElementSet& x);
std::vector<std::array<int, 2>> pair_witness(const HypergraphicMatroid& m,
                                             const ValueOrder& order, const ElementSet& x);

// arc[e] = pair_for[e] oriented away from the minimum vertex of its tree in
// the witness forest; every vertex is the head of at most one arc.
std::vector<std::array<int, 2>> orient_away_from_roots(
    int num_vertices, const ElementSet& x, const std::vector<std::array<int, 2>>& pair_for);

// -- framed (sparse linear with an identity frame adjoined) ---------------------
// Frame rows exchangeable with column e: exactly its nonzero rows, ascending.
std::vector<int> circuit_rows(const SparseLinearMatroid& m, int e);

// injection[e] = frame row representing e, -1 outside x. A row may represent
// an element only if it lies in circuit_rows of that element; elements are
// processed in value order, augmenting scans try rows in ascending order.
// Exists for every independent x; throws std::logic_error otherwise.
std::vector<int> frame_injection(const SparseLinearMatroid& m, const ValueOrder& order,
                                 const ElementSet& x);

// -- interval neighbourhoods (ids double as the left-to-right axis) -------------
// Nearest member of x strictly left/right of y on the sentinel-extended axis:
// -1 and n always count as members, so pre(-1) = -1 and nex(n) = n.
int pre_in(const ElementSet& x, int y);
int nex_in(const ElementSet& x, int y, int n);

// Representative of y in the nonempty set j (y not in j): whichever of its two
// neighbours in j joins with y strictly lower in the family tree, the right
// neighbour on ties. Members represent themselves. Never a sentinel.
int representative(const LaminarMatroid& m, const ElementSet& j, int y);

// Blocking neighbourhoods around r with respect to x (r outside x). Entries
// may be sentinels; callers intersect with the ground set as needed.
// quad  = both neighbours of r in x plus their outer neighbours in x;
// triple = the representative of r in x plus its two neighbours in x.
std::array<int, 4> neighbor_quad(const ElementSet& x, int r, int n);
std::array<int, 3> representative_triple(const LaminarMatroid& m, const ElementSet& x, int r);

}  // namespace msp
