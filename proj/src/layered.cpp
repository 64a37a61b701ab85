#include "msp/layered.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msp {
namespace {

int ceil_log2(int x) {
  int c = 0;
  while ((1 << c) < x) ++c;
  return c;
}

// C(n, s) / 2^n for s = 0..n, exact in doubles for the sizes used here.
std::vector<double> half_binomial(int n) {
  std::vector<double> w(n + 1);
  w[0] = std::ldexp(1.0, -n);
  for (int s = 1; s <= n; ++s) w[s] = w[s - 1] * (n - s + 1) / s;
  return w;
}

struct SamplePrefix {
  ElementSet sampled;
  std::vector<int> opt_sorted;  // best first
};

SamplePrefix sample_opt(const OrderedMatroid& m, const std::vector<int>& arrival, int s) {
  SamplePrefix p;
  OptTracker tracker(m);
  for (int i = 0; i < s; ++i) {
    tracker.add(arrival[i]);
    p.sampled.insert(arrival[i]);
  }
  p.opt_sorted = tracker.opt_sorted();
  return p;
}

// r joins the optimum once added: r in OPT(sample + r), evaluated through the
// one-step greedy recurrence over the sorted prefix optimum.
bool improves(const OrderedMatroid& m, const std::vector<int>& opt_sorted, int r) {
  std::vector<int> cands;
  cands.reserve(opt_sorted.size() + 1);
  bool placed = false;
  for (int o : opt_sorted) {
    if (!placed && m.higher(r, o)) {
      cands.push_back(r);
      placed = true;
    }
    cands.push_back(o);
  }
  if (!placed) cands.push_back(r);
  return m.matroid->greedy_max(cands).contains(r);
}

SelectionOutcome run_reduction(const OrderedMatroid& m, const ArrivalTrial& trial,
                               const LayeredEngine& engine, bool improvers_only,
                               bool thresholds_geometric, bool trace) {
  int n = (int)trial.arrival.size();
  int s = trial.sample_size;
  int t = (int)(trial.aux & 0xffffff);
  if (s < 0 || s > n || t < 0 || s + t > n)
    throw std::invalid_argument("sample or reveal size out of range");

  SamplePrefix prefix = sample_opt(m, trial.arrival, s);
  std::vector<int> thresholds;
  if (thresholds_geometric) {
    for (size_t pow = 1; pow <= prefix.opt_sorted.size(); pow *= 2)
      thresholds.push_back(prefix.opt_sorted[pow - 1]);
  } else {
    thresholds = prefix.opt_sorted;
  }

  ElementSet ground;
  if (improvers_only) {
    m.ground().for_each([&](int r) {
      if (!prefix.sampled.contains(r) && improves(m, prefix.opt_sorted, r))
        ground.insert(r);
    });
  } else {
    ground = m.ground() - prefix.sampled;
  }

  ElementSet reveal;
  for (int i = s; i < s + t; ++i) {
    if (ground.contains(trial.arrival[i])) reveal.insert(trial.arrival[i]);
  }
  std::vector<int> stage;
  for (int i = s + t; i < n; ++i) {
    if (ground.contains(trial.arrival[i])) stage.push_back(trial.arrival[i]);
  }

  LayeredInstance inst = make_layered(restrict_to(m, ground), std::move(thresholds), reveal);
  SelectionOutcome out;
  out.selected = engine(inst, stage);
  if (trace) {
    OptTracker tracker(m);
    for (int i = 0; i < n; ++i) {
      int r = trial.arrival[i];
      bool in_opt = i < s ? tracker.add(r) : ground.contains(r);
      bool took = i >= s + t && out.selected.contains(r);
      out.trace.push_back({i + 1, r, in_opt, took, took});
    }
  }
  return out;
}

}  // namespace

int LayeredInstance::layer_of(int r) const {
  int j = 0;
  while (j < (int)thresholds.size() && matroid.higher(thresholds[j], r)) ++j;
  return j;
}

ElementSet LayeredInstance::layer(int j) const {
  ElementSet out;
  matroid.ground().for_each([&](int r) {
    if (layer_of(r) == j) out.insert(r);
  });
  return out;
}

LayeredInstance make_layered(OrderedMatroid matroid, std::vector<int> thresholds,
                             ElementSet sample) {
  int space = matroid.id_space();
  ElementSet ground = matroid.ground();
  for (size_t i = 0; i < thresholds.size(); ++i) {
    int c = thresholds[i];
    if (c < 0 || c >= space) throw std::invalid_argument("threshold id out of range");
    if (ground.contains(c)) throw std::invalid_argument("threshold inside the live ground");
    if (i > 0 && !matroid.higher(thresholds[i - 1], c))
      throw std::invalid_argument("thresholds must strictly decrease");
  }
  if (!sample.subset_of(ground))
    throw std::invalid_argument("sample outside the live ground");
  return {std::move(matroid), std::move(thresholds), std::move(sample)};
}

BucketPlan build_buckets(int num_thresholds, int tau, int delta) {
  if (num_thresholds < 0 || tau < 0 || delta < 0 || delta >= (1 << tau))
    throw std::invalid_argument("bucket plan draw out of range");
  BucketPlan plan;
  plan.tau = tau;
  plan.delta = delta;
  int k = num_thresholds;
  int width = 1 << tau;
  int count = (delta + k + width - 1) / width;
  for (int i = 1; i <= count; ++i)
    plan.ranges.push_back(
        {std::max(0, width * (i - 1) - delta + 1), std::min(k, width * i - delta)});
  return plan;
}

BucketPlan draw_bucket_plan(int num_thresholds, Rng& rng) {
  int tau = rng.next_int(ceil_log2(num_thresholds + 1) + 1);
  int delta = rng.next_int(1 << tau);
  BucketPlan plan = build_buckets(num_thresholds, tau, delta);
  plan.odd_buckets = rng.next_bool();
  return plan;
}

int layered_alpha(int num_thresholds) {
  return 8 * (ceil_log2(num_thresholds + 1) + 1);
}

SelectionOutcome run_feldman_layered(const LayeredInstance& inst,
                                     const std::vector<int>& arrival,
                                     const BucketPlan& plan, bool trace) {
  int k = inst.num_thresholds();
  int count = (int)plan.ranges.size();
  ElementSet ground = inst.matroid.ground();
  for (int r : arrival) {
    if (!ground.contains(r) || inst.sample.contains(r))
      throw std::invalid_argument("arrival outside the unseen ground");
  }

  std::vector<int> bucket_of(k + 1, 0);  // 0 = no bucket owns the layer
  for (int i = 1; i <= count; ++i) {
    for (int j = std::max(0, plan.ranges[i - 1].lo);
         j <= std::min(k, plan.ranges[i - 1].hi); ++j)
      bucket_of[j] = i;
  }
  std::vector<ElementSet> bucket_elems(count + 2);
  ground.for_each([&](int r) {
    int b = bucket_of[inst.layer_of(r)];
    if (b > 0) bucket_elems[b].insert(r);
  });
  std::vector<ElementSet> suffix(count + 2);  // union of buckets i and above
  for (int i = count; i >= 1; --i) suffix[i] = suffix[i + 1] | bucket_elems[i];

  auto active = [&](int i) { return (i % 2 == 1) == plan.odd_buckets; };
  std::vector<std::shared_ptr<const Minor>> minors(count + 1);
  for (int i = 1; i <= count; ++i) {
    if (!active(i)) continue;
    ElementSet restricted = bucket_elems[i];
    if (i > 1) restricted &= span(*inst.matroid.matroid, inst.sample & suffix[i - 1]);
    minors[i] = std::make_shared<Minor>(inst.matroid.matroid, std::move(restricted),
                                        inst.sample & suffix[i + 1]);
  }

  std::vector<ElementSet> taken(count + 1);
  SelectionOutcome out;
  int pos = 0;
  for (int r : arrival) {
    ++pos;
    int b = bucket_of[inst.layer_of(r)];
    bool eligible = b > 0 && minors[b] && minors[b]->ground().contains(r);
    bool ok = eligible && minors[b]->independent(taken[b].plus(r));
    if (ok) {
      taken[b].insert(r);
      out.selected.insert(r);
    }
    if (trace) out.trace.push_back({pos, r, eligible, ok, ok});
  }
  if (!inst.matroid.independent(out.selected))
    throw std::logic_error("bucket union is dependent");
  return out;
}

SelectionOutcome run_feldman_layered(const LayeredInstance& inst,
                                     const std::vector<int>& arrival, Rng& rng,
                                     bool trace) {
  return run_feldman_layered(inst, arrival, draw_bucket_plan(inst.num_thresholds(), rng),
                             trace);
}

SelectionOutcome run_ordinal_reduction(const OrderedMatroid& m, const ArrivalTrial& trial,
                                       const LayeredEngine& engine, bool trace) {
  return run_reduction(m, trial, engine, false, true, trace);
}

SelectionOutcome run_probability_reduction(const OrderedMatroid& m,
                                           const ArrivalTrial& trial,
                                           const LayeredEngine& engine, bool trace) {
  return run_reduction(m, trial, engine, true, false, trace);
}

std::vector<int> OrdinalReductionEngine::pick_thresholds(
    const std::vector<int>& opt_sorted) const {
  std::vector<int> c;
  for (size_t pow = 1; pow <= opt_sorted.size(); pow *= 2) c.push_back(opt_sorted[pow - 1]);
  return c;
}

std::vector<int> ProbabilityReductionEngine::pick_thresholds(
    const std::vector<int>& opt_sorted) const {
  return opt_sorted;
}

void LayeredReductionEngine::draw_extras(ArrivalTrial& trial, Rng& rng) const {
  int n = num_elements();
  trial.sample_size = binomial_draw(n, 0.5, rng);
  SamplePrefix prefix = sample_opt(m_, trial.arrival, trial.sample_size);
  int k = (int)pick_thresholds(prefix.opt_sorted).size();
  uint64_t t = (uint64_t)binomial_draw(n - trial.sample_size, 0.5, rng);
  uint64_t tau = (uint64_t)rng.next_int(ceil_log2(k + 1) + 1);
  uint64_t delta = (uint64_t)rng.next_int(1 << tau);
  uint64_t parity = rng.next_bool() ? 1 : 0;
  trial.aux = t | (tau << 24) | (delta << 32) | (parity << 48);
  trial.times.clear();
}

std::vector<TrialCase> LayeredReductionEngine::enumerate_cases(
    std::vector<int> arrival) const {
  int n = (int)arrival.size();
  std::vector<double> ps = half_binomial(n);
  std::vector<TrialCase> cases;
  for (int s = 0; s <= n; ++s) {
    SamplePrefix prefix = sample_opt(m_, arrival, s);
    int k = (int)pick_thresholds(prefix.opt_sorted).size();
    int top = ceil_log2(k + 1);
    std::vector<double> pt = half_binomial(n - s);
    for (int t = 0; t <= n - s; ++t) {
      for (int tau = 0; tau <= top; ++tau) {
        for (int delta = 0; delta < (1 << tau); ++delta) {
          for (int parity = 0; parity <= 1; ++parity) {
            ArrivalTrial trial;
            trial.arrival = arrival;
            trial.sample_size = s;
            trial.aux = (uint64_t)t | ((uint64_t)tau << 24) | ((uint64_t)delta << 32) |
                        ((uint64_t)parity << 48);
            double w = ps[s] * pt[t] / ((top + 1) * (1 << tau) * 2);
            cases.push_back({std::move(trial), w});
          }
        }
      }
    }
  }
  return cases;
}

SelectionOutcome LayeredReductionEngine::run(const ArrivalTrial& trial, bool trace) const {
  int tau = (int)((trial.aux >> 24) & 0xff);
  int delta = (int)((trial.aux >> 32) & 0xffff);
  bool parity = (trial.aux >> 48) & 1;
  LayeredEngine engine = [tau, delta, parity](const LayeredInstance& inst,
                                              const std::vector<int>& order) {
    if (tau > ceil_log2(inst.num_thresholds() + 1))
      throw std::invalid_argument("bucket plan draw out of range");
    BucketPlan plan = build_buckets(inst.num_thresholds(), tau, delta);
    plan.odd_buckets = parity;
    return run_feldman_layered(inst, order, plan).selected;
  };
  return improvers_only() ? run_probability_reduction(m_, trial, engine, trace)
                          : run_ordinal_reduction(m_, trial, engine, trace);
}

CouplingSplit coupling_procedure(const OrderedMatroid& m, const std::vector<bool>& coins) {
  if ((int)coins.size() != m.num_elements())
    throw std::invalid_argument("one coin per element required");
  CouplingSplit out;
  int i = 0;
  for (int r : m.elements_by_value()) {
    if (greedy_opt(m, out.v.plus(r)).contains(r)) {
      if (coins[i])
        out.w.insert(r);
      else
        out.v.insert(r);
    }
    ++i;
  }
  return out;
}

}  // namespace msp
