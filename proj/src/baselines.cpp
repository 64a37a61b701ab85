#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "msp/engines.hpp"

namespace msp {

namespace {

std::vector<TrialCase> one_case(std::vector<int> arrival, int sample_size) {
  ArrivalTrial t;
  t.arrival = std::move(arrival);
  t.sample_size = sample_size;
  return {TrialCase{std::move(t), 1.0}};
}

std::vector<double> binomial_pmf_half(int n) {
  std::vector<double> w(n + 1);
  w[0] = std::ldexp(1.0, -n);
  for (int s = 0; s < n; ++s) w[s + 1] = w[s] * (n - s) / (s + 1);
  return w;
}

// Element with the `need`-th smallest order rank among the first `count`
// arrivals, or -1 when there are fewer than `need` of them.
int nth_best_of_prefix(const ValueOrder& order, const std::vector<int>& arrival,
                       int count, int need) {
  if (need < 1 || need > count) return -1;
  std::vector<int> ranks;
  ranks.reserve(count);
  for (int q = 0; q < count; ++q) ranks.push_back(order.rank_of(arrival[q]));
  std::nth_element(ranks.begin(), ranks.begin() + (need - 1), ranks.end());
  return order.element_at_rank(ranks[need - 1]);
}

}  // namespace

// ---------------------------------------------------------------------------
// Greedy.
// ---------------------------------------------------------------------------

void GreedyEngine::draw_extras(ArrivalTrial& trial, Rng&) const {
  trial.sample_size = 0;
  trial.aux = 0;
  trial.times.clear();
}

std::vector<TrialCase> GreedyEngine::enumerate_cases(std::vector<int> arrival) const {
  return one_case(std::move(arrival), 0);
}

SelectionOutcome GreedyEngine::run(const ArrivalTrial& trial, bool trace) const {
  SelectionOutcome out;
  int n = (int)trial.arrival.size();
  std::optional<OptTracker> opt;  // trace-only diagnostics
  if (trace) opt.emplace(m_);
  for (int i = 0; i < n; ++i) {
    int r = trial.arrival[i];
    bool in_opt = opt ? opt->add(r) : false;
    bool ok = false;
    if (i >= trial.sample_size) {
      out.selected.insert(r);
      ok = m_.independent(out.selected);
      if (!ok) out.selected.erase(r);
    }
    if (trace) out.trace.push_back({i + 1, r, in_opt, ok, ok});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Improving greedy: fixed sample, then optimum membership plus independence.
// ---------------------------------------------------------------------------

ImprovingGreedyEngine::ImprovingGreedyEngine(OrderedMatroid m, int sample_size)
    : m_(std::move(m)), s_(sample_size) {
  if (s_ < 0 || s_ > m_.num_elements())
    throw std::invalid_argument("sample size out of range");
}

void ImprovingGreedyEngine::draw_extras(ArrivalTrial& trial, Rng&) const {
  trial.sample_size = s_;
  trial.aux = 0;
  trial.times.clear();
}

std::vector<TrialCase> ImprovingGreedyEngine::enumerate_cases(
    std::vector<int> arrival) const {
  return one_case(std::move(arrival), s_);
}

SelectionOutcome ImprovingGreedyEngine::run(const ArrivalTrial& trial, bool trace) const {
  OptTracker opt(m_);
  SelectionOutcome out;
  int n = (int)trial.arrival.size();
  if (trace) out.trace.reserve(n);
  for (int i = 0; i < n; ++i) {
    int r = trial.arrival[i];
    bool in_opt = opt.add(r);
    bool ok = false;
    if (i >= trial.sample_size && in_opt) {
      out.selected.insert(r);
      ok = m_.independent(out.selected);
      if (!ok) out.selected.erase(r);
    }
    if (trace) out.trace.push_back({i + 1, r, in_opt, ok, ok});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dyadic position windows.
// ---------------------------------------------------------------------------

DyadicWindowEngine::DyadicWindowEngine(int n, int rank, ValueOrder order)
    : m_(ordered_uniform(UniformInstance{n, rank}, std::move(order))), rank_(rank) {
  auto pow2 = [](int v) { return v >= 1 && (v & (v - 1)) == 0; };
  if (!pow2(n) || !pow2(rank) || rank > n)
    throw std::invalid_argument("window rule needs powers of two with rank <= n");
  levels_ = 0;
  while ((1 << levels_) < rank_) ++levels_;
}

void DyadicWindowEngine::draw_extras(ArrivalTrial& trial, Rng&) const {
  trial.sample_size = 0;
  trial.aux = 0;
  trial.times.clear();
}

std::vector<TrialCase> DyadicWindowEngine::enumerate_cases(std::vector<int> arrival) const {
  return one_case(std::move(arrival), 0);
}

SelectionOutcome DyadicWindowEngine::run(const ArrivalTrial& trial, bool trace) const {
  int n = (int)trial.arrival.size();
  if (n != m_.num_elements()) throw std::invalid_argument("trial size mismatch");
  std::vector<char> take(n, 0);
  take[0] = 1;  // the earliest window admits exactly its first arrival
  for (int i = levels_ - 1; i >= 0; --i) {
    int lo = n >> (i + 1);  // window spans 0-based positions [lo, hi)
    int hi = n >> i;
    int budget = rank_ >> (i + 1);
    // threshold: (rank/2^i)-th best among everything before the window;
    // undefined thresholds admit every arrival while budget lasts
    int f = nth_best_of_prefix(m_.order, trial.arrival, lo, rank_ >> i);
    for (int q = lo; q < hi && budget > 0; ++q) {
      if (f < 0 || m_.higher(trial.arrival[q], f)) {
        take[q] = 1;
        --budget;
      }
    }
  }
  SelectionOutcome out;
  std::optional<OptTracker> opt;
  if (trace) opt.emplace(m_);
  for (int i = 0; i < n; ++i) {
    int r = trial.arrival[i];
    bool in_opt = opt ? opt->add(r) : false;
    if (take[i]) out.selected.insert(r);
    if (trace) out.trace.push_back({i + 1, r, in_opt, (bool)take[i], (bool)take[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Timed dyadic classes.
// ---------------------------------------------------------------------------

TimedUniformEngine::TimedUniformEngine(int n, int rank, ValueOrder order)
    : m_(ordered_uniform(UniformInstance{n, rank}, std::move(order))), rank_(rank) {
  if (rank_ < 2) throw std::invalid_argument("timed rule needs rank >= 2");
}

void TimedUniformEngine::draw_extras(ArrivalTrial& trial, Rng& rng) const {
  int n = (int)trial.arrival.size();
  trial.sample_size = 0;
  trial.aux = 0;
  trial.times.resize(n);
  for (double& t : trial.times) t = rng.next_double();
  std::sort(trial.times.begin(), trial.times.end());
}

std::vector<TrialCase> TimedUniformEngine::enumerate_cases(std::vector<int> arrival) const {
  int n = (int)arrival.size();
  // Classes deeper than `top` have floor budget 0, so lumping them into the
  // class `top` slot changes nothing: their members are never taken and
  // they land before every threshold cut of the shallower classes either way.
  int top = 0;
  while ((rank_ >> (top + 1)) >= 1) ++top;
  std::vector<double> fact(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  std::vector<int> count(top + 1, 0);
  std::vector<TrialCase> cases;
  auto emit = [&]() {
    double w = fact[n];
    for (int cls = 0; cls <= top; ++cls) {
      w /= fact[count[cls]];
      w *= std::pow(std::ldexp(1.0, cls == top ? -top : -(cls + 1)), count[cls]);
    }
    ArrivalTrial t;
    t.arrival = arrival;
    t.times.reserve(n);
    for (int cls = top; cls >= 0; --cls) {
      for (int q = 0; q < count[cls]; ++q)
        t.times.push_back(std::ldexp(1.0 + (q + 1.0) / (count[cls] + 1.0), -(cls + 1)));
    }
    cases.push_back({std::move(t), w});
  };
  std::function<void(int, int)> rec = [&](int cls, int left) {
    if (cls == top) {
      count[cls] = left;
      emit();
      count[cls] = 0;
      return;
    }
    for (int c = 0; c <= left; ++c) {
      count[cls] = c;
      rec(cls + 1, left - c);
    }
    count[cls] = 0;
  };
  rec(0, n);
  return cases;
}

SelectionOutcome TimedUniformEngine::run(const ArrivalTrial& trial, bool trace) const {
  int n = (int)trial.arrival.size();
  if ((int)trial.times.size() != n)
    throw std::invalid_argument("timed rule needs arrival times");
  auto class_of = [](double t) {
    if (t <= 0.0) return 62;
    int e;
    std::frexp(t, &e);  // t in [2^{e-1}, 2^e)
    return std::min(62, -e);
  };
  std::map<int, int> threshold;  // class -> threshold element, -1 undefined
  std::map<int, int> taken;      // class -> accepted so far
  std::vector<char> take(n, 0);
  for (int i = 0; i < n; ++i) {
    int j = class_of(trial.times[i]);
    int budget = j + 1 < 31 ? rank_ >> (j + 1) : 0;  // floor(rank / 2^{j+1})
    if (budget == 0) continue;
    auto it = threshold.find(j);
    if (it == threshold.end()) {
      double eps = std::sqrt(12.0 * std::ldexp(1.0, j) * std::log((double)rank_) / rank_);
      double cut = std::ldexp(1.0, -(j + 1));
      int need = (int)std::ceil(cut * (1.0 + eps) * rank_);
      int before =
          (int)(std::lower_bound(trial.times.begin(), trial.times.end(), cut) -
                trial.times.begin());
      it = threshold.emplace(j, nth_best_of_prefix(m_.order, trial.arrival, before, need))
               .first;
    }
    if (it->second < 0) continue;  // undefined threshold: nothing from this class
    int& cnt = taken[j];
    if (cnt >= budget) continue;
    if (m_.higher(trial.arrival[i], it->second)) {
      take[i] = 1;
      ++cnt;
    }
  }
  SelectionOutcome out;
  std::optional<OptTracker> opt;
  if (trace) opt.emplace(m_);
  for (int i = 0; i < n; ++i) {
    int r = trial.arrival[i];
    bool in_opt = opt ? opt->add(r) : false;
    if (take[i]) out.selected.insert(r);
    if (trace) out.trace.push_back({i + 1, r, in_opt, (bool)take[i], (bool)take[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weight threshold with a halving ladder.
// ---------------------------------------------------------------------------

ThresholdPriceEngine::ThresholdPriceEngine(OrderedMatroid m, std::vector<double> weights,
                                           int rank)
    : m_(std::move(m)), weights_(std::move(weights)), rank_(rank) {
  if (rank_ < 1) throw std::invalid_argument("rank must be >= 1");
  if ((int)weights_.size() != m_.id_space())
    throw std::invalid_argument("one weight per element required");
  std::vector<int> ids = m_.elements_by_value();
  for (size_t i = 1; i < ids.size(); ++i) {
    if (!(weights_[ids[i - 1]] > weights_[ids[i]]))
      throw std::invalid_argument("weights must strictly decrease along the value order");
  }
  tau_choices_ = 1;
  for (int v = 1; v < rank_; v *= 2) ++tau_choices_;  // ceil(log2 rank) + 1
}

void ThresholdPriceEngine::draw_extras(ArrivalTrial& trial, Rng& rng) const {
  trial.sample_size = binomial_draw((int)trial.arrival.size(), 0.5, rng);
  trial.aux = (uint64_t)rng.next_int(tau_choices_);
  trial.times.clear();
}

std::vector<TrialCase> ThresholdPriceEngine::enumerate_cases(
    std::vector<int> arrival) const {
  int n = (int)arrival.size();
  std::vector<double> pmf = binomial_pmf_half(n);
  std::vector<TrialCase> cases;
  cases.reserve((n + 1) * tau_choices_);
  for (int s = 0; s <= n; ++s) {
    for (int tau = 0; tau < tau_choices_; ++tau) {
      ArrivalTrial t;
      t.arrival = arrival;
      t.sample_size = s;
      t.aux = (uint64_t)tau;
      cases.push_back({std::move(t), pmf[s] / tau_choices_});
    }
  }
  return cases;
}

SelectionOutcome ThresholdPriceEngine::run(const ArrivalTrial& trial, bool trace) const {
  int n = (int)trial.arrival.size();
  int tau = (int)trial.aux;
  if (tau < 0 || tau >= tau_choices_)
    throw std::invalid_argument("threshold ladder draw out of range");
  double top = -std::numeric_limits<double>::infinity();
  bool seen = false;  // any non-loop element sampled
  for (int i = 0; i < trial.sample_size; ++i) {
    int r = trial.arrival[i];
    if (!m_.independent(ElementSet::of({r}))) continue;
    seen = true;
    top = std::max(top, weights_[r]);
  }
  double cutoff = seen ? top / std::ldexp(1.0, tau)
                       : std::numeric_limits<double>::infinity();
  SelectionOutcome out;
  std::optional<OptTracker> opt;
  if (trace) opt.emplace(m_);
  for (int i = 0; i < n; ++i) {
    int r = trial.arrival[i];
    bool in_opt = opt ? opt->add(r) : false;
    bool ok = false;
    if (i >= trial.sample_size && weights_[r] >= cutoff) {
      out.selected.insert(r);
      ok = m_.independent(out.selected);
      if (!ok) out.selected.erase(r);
    }
    if (trace) out.trace.push_back({i + 1, r, in_opt, ok, ok});
  }
  return out;
}

}  // namespace msp
