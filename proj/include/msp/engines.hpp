#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "msp/matroid.hpp"
#include "msp/rng.hpp"
#include "msp/zoo.hpp"

namespace msp {

// ---------------------------------------------------------------------------
// Online selection rules. Every engine consumes one ArrivalTrial: a random
// arrival order plus whatever extra randomness the rule needs (sample size,
// arrival times, auxiliary draws). Engines are immutable once built; each
// run owns its per-trial state, so concurrent runs over one engine are fine.
// ---------------------------------------------------------------------------

struct ArrivalTrial {
  std::vector<int> arrival;   // arrival[i] = element arriving at position i+1
  int sample_size = 0;        // positions 1..sample_size are observe-only
  uint64_t aux = 0;           // packed rule-specific draws (thresholds etc.)
  std::vector<double> times;  // ascending arrival times, timed rules only
};

struct StepRecord {
  int position;  // 1-based
  int element;
  bool in_current_opt;
  bool constraint_ok;
  bool accepted;
};

struct SelectionOutcome {
  ElementSet selected;
  std::vector<StepRecord> trace;  // one record per position when tracing
};

// One deterministic replay case: conditional on the arrival order, the
// engine's internal randomness produces `trial` with probability `weight`.
struct TrialCase {
  ArrivalTrial trial;
  double weight = 1.0;
};

class OnlineEngine {
 public:
  virtual ~OnlineEngine() = default;

  virtual std::string name() const = 0;
  virtual const OrderedMatroid& ordered() const = 0;

  // Fills everything except the arrival order.
  virtual void draw_extras(ArrivalTrial& trial, Rng& rng) const = 0;

  // Exact law of draw_extras conditional on the given arrival order; weights
  // sum to 1. Used by exhaustive replays, so it must stay small.
  virtual std::vector<TrialCase> enumerate_cases(std::vector<int> arrival) const = 0;

  virtual SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const = 0;

  int num_elements() const { return ordered().num_elements(); }
};

using EnginePtr = std::shared_ptr<const OnlineEngine>;

// ---------------------------------------------------------------------------
// Guarantees shared by the marking-rule engines below: each admits blocking
// sets of size at most k, which yields a selection-probability bound that
// depends only on (k, sample fraction).
// ---------------------------------------------------------------------------

// Sample fraction maximizing the guarantee: 1/e for k=1, k^{-1/(k-1)} else.
double optimal_sample_fraction(int k);

// Guaranteed competitive ratio at the optimal fraction: e for k=1,
// k^{k/(k-1)} else.
double optimal_ratio(int k);

struct SelectionGuarantee {
  int blocking_size;       // k
  double sample_fraction;  // argmax p
  double ratio;            // guarantee at that p
};
SelectionGuarantee selection_guarantee(int k);

// Limit lower bound on the probability that a fixed optimum element is
// selected: -p ln p for k=1, (p - p^k)/(k-1) for k>=2.
double selection_probability_bound(int k, double p);

// Finite-n version: E_{s~Bin(n,p)} (1/n) sum_{t=s+1}^{n} prod_{j=s+1}^{t-1}
// max(0, 1-k/j). Exact evaluation in doubles, O(n^2). Dominates the limit
// bound for every n.
double selection_probability_bound_discrete(int n, int k, double p);

// ---------------------------------------------------------------------------
// Marking-rule engines. All share the same skeleton: draw s ~ Bin(n, p),
// observe the first s arrivals, then select any arrival that is in the
// current optimum and passes the family's marking check. forbidden_set() is
// the pure replay-side blocking predicate the property verifier exercises:
// members of OPT(x) whose earlier arrival may block r_star, where
// r_star in OPT(y) and x subset of y - r_star.
// ---------------------------------------------------------------------------

class MarkingEngine : public OnlineEngine {
 public:
  MarkingEngine(OrderedMatroid m, double p);

  const OrderedMatroid& ordered() const override { return m_; }
  double sample_fraction() const { return p_; }

  virtual int blocking_size_bound() const = 0;
  virtual ElementSet forbidden_set(const ElementSet& x, const ElementSet& y,
                                   int r_star) const = 0;

  void draw_extras(ArrivalTrial& trial, Rng& rng) const override;
  std::vector<TrialCase> enumerate_cases(std::vector<int> arrival) const override;

 protected:
  OrderedMatroid m_;
  double p_;
};

// Single-choice rule: after the sample, take the first arrival beating every
// element seen so far. Meaningful on rank-1 matroids, where the blocking
// predicate is "x's best element".
class BestSoFarEngine : public MarkingEngine {
 public:
  // p < 0 picks the family default (here 1/e).
  explicit BestSoFarEngine(OrderedMatroid m, double p = -1);
  std::string name() const override { return "classical"; }
  int blocking_size_bound() const override { return 1; }
  ElementSet forbidden_set(const ElementSet& x, const ElementSet& y,
                           int r_star) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;
};

// Marks the left vertex matched to the accepted element in the canonical
// matching of the current optimum; an arrival is blocked when its own
// matched vertex is already marked.
class TransversalEngine : public MarkingEngine {
 public:
  TransversalEngine(std::shared_ptr<const TransversalMatroid> m, ValueOrder order,
                    double p = -1);
  std::string name() const override { return "transversal"; }
  int blocking_size_bound() const override { return 1; }
  ElementSet forbidden_set(const ElementSet& x, const ElementSet& y,
                           int r_star) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  std::shared_ptr<const TransversalMatroid> t_;
};

// Marks every vertex on the accepted element's canonical source-terminal
// path; an arrival is blocked when its path touches a marked vertex.
// Node-disjoint instances only.
class GammoidEngine : public MarkingEngine {
 public:
  GammoidEngine(std::shared_ptr<const GammoidMatroid> m, ValueOrder order, double p = -1);
  std::string name() const override { return "gammoid"; }
  int blocking_size_bound() const override { return g_->instance().mu; }
  ElementSet forbidden_set(const ElementSet& x, const ElementSet& y,
                           int r_star) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  std::shared_ptr<const GammoidMatroid> g_;
};

// Matching-matroid rule with two accepting branches: an arrival already
// covered by the running cover is taken outright; otherwise it is taken iff
// both endpoints of its canonical cover edge are unmarked, marking them.
class PackingEngine : public MarkingEngine {
 public:
  PackingEngine(std::shared_ptr<const MatchingMatroid> m, ValueOrder order, double p = -1);
  std::string name() const override { return "matching"; }
  int blocking_size_bound() const override { return c_->instance().mu; }
  ElementSet forbidden_set(const ElementSet& x, const ElementSet& y,
                           int r_star) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  std::shared_ptr<const MatchingMatroid> c_;
};

// Orients the accepted edge as in the canonical orientation of the current
// optimum forest; an arrival is blocked when either endpoint of its oriented
// edge already has indegree one.
class GraphicEngine : public MarkingEngine {
 public:
  GraphicEngine(std::shared_ptr<const GraphicMatroid> m, ValueOrder order, double p = -1);
  std::string name() const override { return "graphic"; }
  int blocking_size_bound() const override { return 2; }
  ElementSet forbidden_set(const ElementSet& x, const ElementSet& y,
                           int r_star) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  std::shared_ptr<const GraphicMatroid> g_;
};

// Same rule over the canonical pair choice of hyperedges.
class HypergraphicEngine : public MarkingEngine {
 public:
  HypergraphicEngine(std::shared_ptr<const HypergraphicMatroid> m, ValueOrder order,
                     double p = -1);
  std::string name() const override { return "hypergraphic"; }
  int blocking_size_bound() const override { return 2; }
  ElementSet forbidden_set(const ElementSet& x, const ElementSet& y,
                           int r_star) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  std::shared_ptr<const HypergraphicMatroid> h_;
};

// Frame-row rule: an arrival is blocked when any frame row spanning it is
// marked; accepting marks the row injected for it in the current optimum.
class FramedEngine : public MarkingEngine {
 public:
  FramedEngine(std::shared_ptr<const SparseLinearMatroid> m, ValueOrder order,
               double p = -1);
  std::string name() const override { return "framed"; }
  int blocking_size_bound() const override { return f_->instance().sparsity_k; }
  ElementSet forbidden_set(const ElementSet& x, const ElementSet& y,
                           int r_star) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  std::shared_ptr<const SparseLinearMatroid> f_;
};

// Axis-interval rule for single-source planar flow instances whose terminal
// ids are in left-to-right drawing order. The sample fixes J = OPT(R_s);
// an arrival in the current optimum is taken iff neither of its two axis
// neighbours in J (sentinels included) is marked, marking both. s = 0
// degenerates to taking the first arrival only.
class SemiplanarEngine : public MarkingEngine {
 public:
  explicit SemiplanarEngine(OrderedMatroid m, double p = -1);
  std::string name() const override { return "semiplanar"; }
  int blocking_size_bound() const override { return 4; }
  ElementSet forbidden_set(const ElementSet& x, const ElementSet& y,
                           int r_star) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;
};

// Representative rule for nested interval families: an arrival in the
// current optimum is taken iff its representative in the fixed J = OPT(R_s)
// is unmarked, marking it. s = 0 degenerates as above.
class LaminarEngine : public MarkingEngine {
 public:
  LaminarEngine(std::shared_ptr<const LaminarMatroid> m, ValueOrder order, double p = -1);
  std::string name() const override { return "laminar"; }
  int blocking_size_bound() const override { return 3; }
  ElementSet forbidden_set(const ElementSet& x, const ElementSet& y,
                           int r_star) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  std::shared_ptr<const LaminarMatroid> l_;
};

// ---------------------------------------------------------------------------
// Baselines.
// ---------------------------------------------------------------------------

// No sampling, no optimum check: take anything that keeps the pick
// independent.
class GreedyEngine : public OnlineEngine {
 public:
  explicit GreedyEngine(OrderedMatroid m) : m_(std::move(m)) {}
  std::string name() const override { return "greedy"; }
  const OrderedMatroid& ordered() const override { return m_; }
  void draw_extras(ArrivalTrial& trial, Rng& rng) const override;
  std::vector<TrialCase> enumerate_cases(std::vector<int> arrival) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  OrderedMatroid m_;
};

// Fixed sample size s; afterwards take any arrival that is in the current
// optimum and keeps the pick independent.
class ImprovingGreedyEngine : public OnlineEngine {
 public:
  ImprovingGreedyEngine(OrderedMatroid m, int sample_size);
  std::string name() const override { return "improving-greedy"; }
  const OrderedMatroid& ordered() const override { return m_; }
  int fixed_sample_size() const { return s_; }
  void draw_extras(ArrivalTrial& trial, Rng& rng) const override;
  std::vector<TrialCase> enumerate_cases(std::vector<int> arrival) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  OrderedMatroid m_;
  int s_;
};

// Dyadic-window rule for uniform matroids with n and the rank both powers of
// two. Position windows halve toward the start; the earliest window admits
// exactly its first arrival, window i admits up to rank/2^{i+1} arrivals
// beating the (rank/2^i)-th best element seen strictly before the window.
// An undefined threshold admits every arrival in the window (budget
// permitting). Deterministic given the arrival order.
class DyadicWindowEngine : public OnlineEngine {
 public:
  DyadicWindowEngine(int n, int rank, ValueOrder order);
  std::string name() const override { return "kleinberg"; }
  const OrderedMatroid& ordered() const override { return m_; }
  void draw_extras(ArrivalTrial& trial, Rng& rng) const override;
  std::vector<TrialCase> enumerate_cases(std::vector<int> arrival) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  OrderedMatroid m_;
  int rank_;
  int levels_;  // log2(rank)
};

// Timed variant for uniform matroids: arrival times are uniform on [0,1),
// the time axis is cut into dyadic classes [2^{-j-1}, 2^{-j}), and class j
// admits up to floor(rank/2^{j+1}) arrivals beating the
// ceil(rank/2^{j+1} (1+eps_j))-th best element that arrived before the
// class, eps_j = sqrt(12 2^j ln(rank)/rank). An undefined threshold admits
// nothing.
class TimedUniformEngine : public OnlineEngine {
 public:
  TimedUniformEngine(int n, int rank, ValueOrder order);
  std::string name() const override { return "uniform-variant"; }
  const OrderedMatroid& ordered() const override { return m_; }
  void draw_extras(ArrivalTrial& trial, Rng& rng) const override;
  std::vector<TrialCase> enumerate_cases(std::vector<int> arrival) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  OrderedMatroid m_;
  int rank_;
};

// Weight-threshold rule: sample s ~ Bin(n, 1/2), record the top sampled
// non-loop weight w*, draw tau uniform on {0..ceil(log2 rank)}, then
// greedily take non-sampled elements of weight >= w*/2^tau. An all-loop or
// empty sample takes nothing.
class ThresholdPriceEngine : public OnlineEngine {
 public:
  ThresholdPriceEngine(OrderedMatroid m, std::vector<double> weights, int rank);
  std::string name() const override { return "tpa"; }
  const OrderedMatroid& ordered() const override { return m_; }
  void draw_extras(ArrivalTrial& trial, Rng& rng) const override;
  std::vector<TrialCase> enumerate_cases(std::vector<int> arrival) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 private:
  OrderedMatroid m_;
  std::vector<double> weights_;  // by id, strictly decreasing along the order
  int rank_;
  int tau_choices_;  // ceil(log2 rank) + 1
};

}  // namespace msp
