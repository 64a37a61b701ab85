#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msp/matroid.hpp"

namespace msp {

// ---------------------------------------------------------------------------
// Instance descriptions. Element ids are dense 0..n-1 throughout; the value
// order lives in OrderedMatroid and is independent of the combinatorial data.
// Constructors validate invariants and throw std::invalid_argument naming the
// offending piece.
// ---------------------------------------------------------------------------

struct UniformInstance {
  int n = 0;
  int rho = 0;
};

struct PartitionInstance {
  int n = 0;
  std::vector<std::vector<int>> parts;  // pairwise disjoint; uncovered ids are free
  std::vector<int> caps;                // one per part, >= 0
};

struct GraphicInstance {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // element i = edges[i]; parallels allowed
};

struct HypergraphicInstance {
  int num_vertices = 0;
  std::vector<std::vector<int>> edges;  // element i = vertex set of hyperedge i
};

// Laminar family over elements 0..n-1. Every set is a contiguous id interval:
// the id order doubles as the left-to-right terminal order used by the
// representative machinery. The full interval [0,n-1] acts as an implicit
// root; singletons have implicit capacity 1.
struct LaminarInstance {
  int n = 0;
  std::vector<std::array<int, 2>> sets;  // [lo, hi] inclusive
  std::vector<int> caps;                 // one per set, >= 1
};

struct TransversalInstance {
  int num_left = 0;
  std::vector<std::vector<int>> adj;  // adj[element] = left neighbours
};

// Two oracle modes share this shape.
//  * node_disjoint=true: classic gammoid; X independent iff node-disjoint
//    directed paths link X to the sources. Arc capacities must be 1.
//  * node_disjoint=false: single-source arc-capacitated flow network with
//    unit terminal demands; terminal ids in left-to-right drawing order.
struct GammoidInstance {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> arc_caps;  // empty = all 1
  std::vector<int> sources;
  std::vector<int> terminals;  // terminals[i] = vertex of element i
  int mu = 1;                  // declared exchangeability bound
  bool node_disjoint = true;
};

// Matching matroid: elements are terminal vertices of a host graph; a set is
// independent iff some matching covers it.
struct MatchingInstance {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> terminals;  // terminals[i] = vertex of element i
  int mu = 2;
};

// Columns over GF(p) with an implicit identity frame adjoined: the matroid of
// [I | M] restricted to the columns of M. sparsity_k bounds nonzeros per
// column.
struct SparseLinearInstance {
  int rows = 0;
  int field_p = 2;
  int sparsity_k = 0;
  std::vector<std::vector<std::pair<int, int>>> columns;  // (row, value mod p)
};

// ---------------------------------------------------------------------------
// Oracle-backed matroids.
// ---------------------------------------------------------------------------

class UniformMatroid : public Matroid {
 public:
  explicit UniformMatroid(UniformInstance inst);
  int id_space() const override { return inst_.n; }
  bool independent(const ElementSet& x) const override { return x.size() <= inst_.rho; }
  ElementSet greedy_max(const std::vector<int>& candidates) const override;
  const UniformInstance& instance() const { return inst_; }

 private:
  UniformInstance inst_;
};

class PartitionMatroid : public Matroid {
 public:
  explicit PartitionMatroid(PartitionInstance inst);
  int id_space() const override { return inst_.n; }
  bool independent(const ElementSet& x) const override;
  const PartitionInstance& instance() const { return inst_; }

 private:
  PartitionInstance inst_;
  std::vector<int> part_of_;  // -1 = free element
};

class GraphicMatroid : public Matroid {
 public:
  explicit GraphicMatroid(GraphicInstance inst);
  int id_space() const override { return (int)inst_.edges.size(); }
  bool independent(const ElementSet& x) const override;
  ElementSet greedy_max(const std::vector<int>& candidates) const override;
  const GraphicInstance& instance() const { return inst_; }

 private:
  GraphicInstance inst_;
};

class HypergraphicMatroid : public Matroid {
 public:
  explicit HypergraphicMatroid(HypergraphicInstance inst);
  int id_space() const override { return (int)inst_.edges.size(); }
  bool independent(const ElementSet& x) const override;
  const HypergraphicInstance& instance() const { return inst_; }

 private:
  HypergraphicInstance inst_;
};

class LaminarMatroid : public Matroid {
 public:
  explicit LaminarMatroid(LaminarInstance inst);
  int id_space() const override { return inst_.n; }
  bool independent(const ElementSet& x) const override;
  ElementSet greedy_max(const std::vector<int>& candidates) const override;
  const LaminarInstance& instance() const { return inst_; }

  // Smallest family interval containing both a and b, the implicit root
  // [0,n-1] counting as a member; nullopt = the join is the super-root above
  // the tree (only reachable through sentinels).
  // a/b use sentinel coordinates: -1 = left sentinel, n = right sentinel.
  std::optional<std::array<int, 2>> join(int a, int b) const;

 private:
  LaminarInstance inst_;
  std::vector<std::vector<int>> sets_of_;  // set indices containing each element
};

class TransversalMatroid : public Matroid {
 public:
  explicit TransversalMatroid(TransversalInstance inst);
  int id_space() const override { return (int)inst_.adj.size(); }
  bool independent(const ElementSet& x) const override;
  ElementSet greedy_max(const std::vector<int>& candidates) const override;
  const TransversalInstance& instance() const { return inst_; }

 private:
  bool try_augment(int elem, std::vector<uint64_t>& visited,
                   std::vector<int>& left_match) const;
  TransversalInstance inst_;
};

class GammoidMatroid : public Matroid {
 public:
  explicit GammoidMatroid(GammoidInstance inst);
  int id_space() const override { return (int)inst_.terminals.size(); }
  bool independent(const ElementSet& x) const override;
  const GammoidInstance& instance() const { return inst_; }

 private:
  GammoidInstance inst_;
};

class MatchingMatroid : public Matroid {
 public:
  explicit MatchingMatroid(MatchingInstance inst);
  int id_space() const override { return (int)inst_.terminals.size(); }
  bool independent(const ElementSet& x) const override;
  const MatchingInstance& instance() const { return inst_; }

 private:
  MatchingInstance inst_;
  std::vector<std::vector<int>> adj_;
};

class SparseLinearMatroid : public Matroid {
 public:
  explicit SparseLinearMatroid(SparseLinearInstance inst);
  int id_space() const override { return (int)inst_.columns.size(); }
  bool independent(const ElementSet& x) const override;
  ElementSet greedy_max(const std::vector<int>& candidates) const override;
  const SparseLinearInstance& instance() const { return inst_; }

 private:
  SparseLinearInstance inst_;
};

// Convenience wrappers: matroid + order in one step.
OrderedMatroid make_ordered(MatroidPtr m, ValueOrder order);
OrderedMatroid ordered_uniform(UniformInstance inst, ValueOrder order);

}  // namespace msp
