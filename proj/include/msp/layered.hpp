#pragma once

#include <functional>
#include <vector>

#include "msp/engines.hpp"
#include "msp/matroid.hpp"
#include "msp/rng.hpp"

namespace msp {

// ---------------------------------------------------------------------------
// Layered selection: the live ground set is split into layers by phantom
// threshold elements that share the id space and value order but never belong
// to the ground set. An element sits in layer j when exactly j thresholds
// beat it, so layer 0 is the best slice. A visible half-sample is revealed
// up front and can never be selected.
// ---------------------------------------------------------------------------

struct LayeredInstance {
  OrderedMatroid matroid;       // live ground, usually a minor of a base
  std::vector<int> thresholds;  // strictly descending in the value order
  ElementSet sample;            // revealed subset of the ground

  int num_thresholds() const { return (int)thresholds.size(); }
  int layer_of(int r) const;
  ElementSet layer(int j) const;
};

// Validates the split (thresholds descending and outside the ground, sample
// inside it); throws std::invalid_argument naming the offending piece.
LayeredInstance make_layered(OrderedMatroid matroid, std::vector<int> thresholds,
                             ElementSet sample);

// Inclusive layer range of one bucket; lo > hi means the bucket is empty.
struct BucketRange {
  int lo = 0;
  int hi = -1;
};

// Bucket i covers layers max(0, 2^tau (i-1) - delta + 1) .. min(k, 2^tau i - delta)
// for i = 1 .. ceil((delta + k) / 2^tau). The formula is kept as stated: with
// delta = 0 layer 0 lands in no bucket, and k = delta = 0 yields no buckets
// at all.
struct BucketPlan {
  int tau = 0;
  int delta = 0;
  bool odd_buckets = false;  // parity class of the active bucket indices
  std::vector<BucketRange> ranges;
};

BucketPlan build_buckets(int num_thresholds, int tau, int delta);

// tau uniform on {0..ceil(log2(k+1))}, delta uniform on {0..2^tau-1}, then a
// fair parity coin, in that draw order.
BucketPlan draw_bucket_plan(int num_thresholds, Rng& rng);

// Guarantee of the bucketing rule: every layer keeps a 1/alpha share of the
// optimum in expectation, alpha = 8 ceil(log2(k+1) + 1).
int layered_alpha(int num_thresholds);

// The bucketing rule. Non-sample elements arrive in the given order; each
// falls into the bucket owning its layer and is kept greedily when that
// bucket has the active parity and the element lies in the bucket matroid:
// bucket i restricts the live matroid to its elements (intersected with the
// span of the revealed suffix below it when i > 1) and contracts the revealed
// part of buckets above i. The union of the kept sets is returned and checked
// independent. Throws std::invalid_argument on arrivals outside the unseen
// ground.
SelectionOutcome run_feldman_layered(const LayeredInstance& inst,
                                     const std::vector<int>& arrival,
                                     const BucketPlan& plan, bool trace = false);
SelectionOutcome run_feldman_layered(const LayeredInstance& inst,
                                     const std::vector<int>& arrival, Rng& rng,
                                     bool trace = false);

// Bucket-stage hook for the reductions below: consumes the layered instance
// and the arrival order of its unseen elements.
using LayeredEngine =
    std::function<ElementSet(const LayeredInstance&, const std::vector<int>&)>;

// Sampling reductions. Both observe the first sample_size arrivals, build
// thresholds from the optimum of that prefix, reveal the next t arrivals
// (t in the low 24 bits of trial.aux) as the visible half-sample, and hand
// the remainder to the engine.
//   * ordinal: thresholds are the geometric subsequence s(1), s(2), s(4), ...
//     of the prefix optimum; the live ground is everything unsampled.
//   * probability: thresholds are the whole prefix optimum; the live ground
//     keeps only unsampled elements that improve it.
SelectionOutcome run_ordinal_reduction(const OrderedMatroid& m, const ArrivalTrial& trial,
                                       const LayeredEngine& engine, bool trace = false);
SelectionOutcome run_probability_reduction(const OrderedMatroid& m,
                                           const ArrivalTrial& trial,
                                           const LayeredEngine& engine,
                                           bool trace = false);

// ---------------------------------------------------------------------------
// Engine adapters: the reductions with the bucketing rule plugged in, packed
// behind the standard online-engine interface. aux packs (t, tau, delta,
// parity) so replays are deterministic and the exact law stays enumerable.
// ---------------------------------------------------------------------------

class LayeredReductionEngine : public OnlineEngine {
 public:
  explicit LayeredReductionEngine(OrderedMatroid m) : m_(std::move(m)) {}
  const OrderedMatroid& ordered() const override { return m_; }
  void draw_extras(ArrivalTrial& trial, Rng& rng) const override;
  std::vector<TrialCase> enumerate_cases(std::vector<int> arrival) const override;
  SelectionOutcome run(const ArrivalTrial& trial, bool trace = false) const override;

 protected:
  virtual std::vector<int> pick_thresholds(const std::vector<int>& opt_sorted) const = 0;
  virtual bool improvers_only() const = 0;

  OrderedMatroid m_;
};

class OrdinalReductionEngine : public LayeredReductionEngine {
 public:
  using LayeredReductionEngine::LayeredReductionEngine;
  std::string name() const override { return "layered-ordinal"; }

 protected:
  std::vector<int> pick_thresholds(const std::vector<int>& opt_sorted) const override;
  bool improvers_only() const override { return false; }
};

class ProbabilityReductionEngine : public LayeredReductionEngine {
 public:
  using LayeredReductionEngine::LayeredReductionEngine;
  std::string name() const override { return "layered-probability"; }

 protected:
  std::vector<int> pick_thresholds(const std::vector<int>& opt_sorted) const override;
  bool improvers_only() const override { return true; }
};

// ---------------------------------------------------------------------------
// Distributional test oracle. Scans elements best-first; an element that
// improves the kept set v is routed by its coin: 0 into v, 1 into w.
// coins[i] belongs to the element of value rank i+1. With fair coins (v, w)
// has the joint law of (prefix-sample optimum, its outside improvers) under
// a Bin(n, 1/2) sample.
// ---------------------------------------------------------------------------

struct CouplingSplit {
  ElementSet v;
  ElementSet w;
};

CouplingSplit coupling_procedure(const OrderedMatroid& m, const std::vector<bool>& coins);

}  // namespace msp
