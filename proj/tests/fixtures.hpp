#pragma once

// Shared hand-built instances. Expected values asserted against them were
// derived on paper from the definitions and are frozen in the test bodies.

#include "msp/zoo.hpp"

namespace fx {

// Nested interval family on 17 elements, five leaf blocks under three levels
// of caps; rank 5.
inline msp::LaminarInstance nested_intervals17() {
  return {17,
          {{0, 2}, {3, 5}, {0, 5}, {8, 10}, {0, 10}, {11, 13}, {14, 16}, {11, 16}, {0, 16}},
          {2, 2, 3, 2, 4, 2, 2, 3, 5}};
}

// Two-level family on 8 elements, rank 3.
inline msp::LaminarInstance laminar8() {
  return {8, {{0, 3}, {0, 1}, {4, 7}, {6, 7}, {0, 7}}, {2, 1, 2, 1, 3}};
}

// Two sources feeding two disjoint 2-terminal fans; rank 2, exchangeability 1.
inline msp::GammoidInstance diamond_gammoid() {
  msp::GammoidInstance g;
  g.num_vertices = 7;
  g.arcs = {{0, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 5}, {3, 6}};
  g.sources = {0, 1};
  g.terminals = {4, 5, 6};  // e0,e1,e2
  g.mu = 2;
  return g;
}

// A middle rung joins the two source chains, so one source-terminal path can
// meet two witness paths; exchangeability exactly 2.
inline msp::GammoidInstance crossing_gammoid() {
  msp::GammoidInstance g;
  g.num_vertices = 7;
  g.arcs = {{0, 2}, {2, 4}, {1, 3}, {3, 5}, {2, 3}, {3, 6}};
  g.sources = {0, 1};
  g.terminals = {4, 5, 6};  // e0,e1,e2
  g.mu = 2;
  return g;
}

// Single-source arc-capacitated fan: terminals drawn left to right are
// vertices 1..5; constraints |X & {e0,e1,e2}| <= 2 and |X & {e3,e4}| <= 1.
inline msp::GammoidInstance fan_acg() {
  msp::GammoidInstance g;
  g.num_vertices = 8;
  g.arcs = {{0, 6}, {6, 1}, {6, 2}, {6, 3}, {0, 7}, {7, 4}, {7, 5}};
  g.arc_caps = {2, 1, 1, 1, 1, 1, 1};
  g.sources = {0};
  g.terminals = {1, 2, 3, 4, 5};
  g.node_disjoint = false;
  return g;
}

// Path host 0-1-2-3-4 with terminals at the even vertices: every pair is
// coverable but all three are not; rank 2.
inline msp::MatchingInstance path5_matching() {
  return {5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {0, 2, 4}, 2};
}

// Hyperedges over 4 vertices; rank 3 and {e0,e3} forces e0 away from (0,1).
inline msp::HypergraphicInstance hyper4() {
  return {4, {{0, 1, 2}, {0, 1}, {2, 3}, {0, 2, 3}}};
}

// Columns r0, r1, r0+r1, r2, r0+r1+r2 over GF(2); rank 3.
inline msp::SparseLinearInstance gf2_3x5() {
  return {3, 2, 3, {{{0, 1}}, {{1, 1}}, {{0, 1}, {1, 1}}, {{2, 1}}, {{0, 1}, {1, 1}, {2, 1}}}};
}

// Parallel columns over GF(3): c1 = 2*c0; rank 2.
inline msp::SparseLinearInstance gf3_parallel() {
  return {2, 3, 2, {{{0, 1}}, {{0, 2}}, {{0, 1}, {1, 1}}}};
}

// Bipartite adjacency with a tight middle vertex; rank 3.
inline msp::TransversalInstance transversal6() {
  return {3, {{0}, {0, 1}, {1}, {1, 2}, {2}, {0, 2}}};
}

// Two singleton parts plus two pair parts, all capacity 1; rank 4.
inline msp::PartitionInstance partition6() {
  return {6, {{0}, {1}, {2, 3}, {4, 5}}, {1, 1, 1, 1}};
}

}  // namespace fx
