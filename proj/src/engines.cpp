#include "msp/engines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "msp/witness.hpp"

namespace msp {

namespace {

// -1 means "use the family default for blocking size k".
double checked_fraction(double p, int k) {
  if (p < 0) p = optimal_sample_fraction(k);
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("sample fraction must lie in [0,1]");
  return p;
}

// Bin(n, p) point masses; exact at the p = 0 and p = 1 edges.
std::vector<double> binomial_pmf(int n, double p) {
  std::vector<double> w(n + 1, 0.0);
  if (p <= 0.0) {
    w[0] = 1.0;
    return w;
  }
  if (p >= 1.0) {
    w[n] = 1.0;
    return w;
  }
  w[0] = std::pow(1.0 - p, n);
  for (int s = 0; s < n; ++s)
    w[s + 1] = w[s] * ((double)(n - s) / (s + 1)) * (p / (1.0 - p));
  return w;
}

// Shared skeleton of the marking rules: feed every arrival to the running
// optimum, skip the sample, and hand arrivals that are in the current
// optimum to the family's check. `attempt` returns acceptance and commits
// its marks on success.
template <class Attempt>
SelectionOutcome sampled_opt_loop(const OrderedMatroid& m, const ArrivalTrial& trial,
                                  bool trace, Attempt attempt) {
  OptTracker opt(m);
  SelectionOutcome out;
  int n = (int)trial.arrival.size();
  if (trace) out.trace.reserve(n);
  for (int i = 0; i < n; ++i) {
    int r = trial.arrival[i];
    bool in_opt = opt.add(r);
    bool ok = false;
    if (i >= trial.sample_size && in_opt) {
      ok = attempt(r, opt);
      if (ok) out.selected.insert(r);
    }
    if (trace) out.trace.push_back({i + 1, r, in_opt, ok, ok});
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Guarantee formulas.
// ---------------------------------------------------------------------------

double optimal_sample_fraction(int k) {
  if (k < 1) throw std::invalid_argument("blocking size must be >= 1");
  if (k == 1) return std::exp(-1.0);
  return std::pow((double)k, -1.0 / (k - 1));
}

double optimal_ratio(int k) {
  if (k < 1) throw std::invalid_argument("blocking size must be >= 1");
  if (k == 1) return std::exp(1.0);
  return std::pow((double)k, (double)k / (k - 1));
}

SelectionGuarantee selection_guarantee(int k) {
  return {k, optimal_sample_fraction(k), optimal_ratio(k)};
}

double selection_probability_bound(int k, double p) {
  if (k < 1) throw std::invalid_argument("blocking size must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  if (k == 1) return -p * std::log(p);
  return (p - std::pow(p, k)) / (k - 1);
}

double selection_probability_bound_discrete(int n, int k, double p) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (k < 1) throw std::invalid_argument("blocking size must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  std::vector<double> pmf = binomial_pmf(n, p);
  double total = 0.0;
  for (int s = 0; s <= n; ++s) {
    if (pmf[s] == 0.0) continue;
    double inner = 0.0;
    double prod = 1.0;
    for (int t = s + 1; t <= n; ++t) {
      if (t > s + 1) prod *= std::max(0.0, 1.0 - (double)k / (t - 1));
      inner += prod;
    }
    total += pmf[s] * inner / n;
  }
  return total;
}

// ---------------------------------------------------------------------------
// MarkingEngine plumbing.
// ---------------------------------------------------------------------------

MarkingEngine::MarkingEngine(OrderedMatroid m, double p) : m_(std::move(m)), p_(p) {}

void MarkingEngine::draw_extras(ArrivalTrial& trial, Rng& rng) const {
  trial.sample_size = binomial_draw((int)trial.arrival.size(), p_, rng);
  trial.aux = 0;
  trial.times.clear();
}

std::vector<TrialCase> MarkingEngine::enumerate_cases(std::vector<int> arrival) const {
  int n = (int)arrival.size();
  std::vector<double> pmf = binomial_pmf(n, p_);
  std::vector<TrialCase> cases;
  for (int s = 0; s <= n; ++s) {
    if (pmf[s] == 0.0) continue;
    cases.push_back({ArrivalTrial{arrival, s, 0, {}}, pmf[s]});
  }
  return cases;
}

// ---------------------------------------------------------------------------
// Single choice.
// ---------------------------------------------------------------------------

BestSoFarEngine::BestSoFarEngine(OrderedMatroid m, double p)
    : MarkingEngine(std::move(m), checked_fraction(p, 1)) {}

ElementSet BestSoFarEngine::forbidden_set(const ElementSet& x, const ElementSet&,
                                          int) const {
  int best = -1;
  x.for_each([&](int e) {
    if (best < 0 || m_.higher(e, best)) best = e;
  });
  ElementSet f;
  if (best >= 0) f.insert(best);
  return f;
}

SelectionOutcome BestSoFarEngine::run(const ArrivalTrial& trial, bool trace) const {
  SelectionOutcome out;
  int n = (int)trial.arrival.size();
  if (trace) out.trace.reserve(n);
  int best = -1;
  bool done = false;
  for (int i = 0; i < n; ++i) {
    int r = trial.arrival[i];
    bool improves = best < 0 || m_.higher(r, best);
    if (improves) best = r;
    bool take = improves && !done && i >= trial.sample_size;
    if (take) {
      out.selected.insert(r);
      done = true;
    }
    if (trace) out.trace.push_back({i + 1, r, improves, take, take});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transversal: mark the matched left vertex.
// ---------------------------------------------------------------------------

TransversalEngine::TransversalEngine(std::shared_ptr<const TransversalMatroid> m,
                                     ValueOrder order, double p)
    : MarkingEngine(make_ordered(m, std::move(order)), checked_fraction(p, 1)),
      t_(std::move(m)) {}

ElementSet TransversalEngine::forbidden_set(const ElementSet& x, const ElementSet& y,
                                            int r_star) const {
  ElementSet ox = greedy_opt(m_, x);
  std::vector<int> px = matching_witness(*t_, m_.order, ox);
  std::vector<int> py = matching_witness(*t_, m_.order, greedy_opt(m_, y));
  int target = py[r_star];
  ElementSet f;
  ox.for_each([&](int e) {
    if (px[e] == target) f.insert(e);
  });
  return f;
}

SelectionOutcome TransversalEngine::run(const ArrivalTrial& trial, bool trace) const {
  ElementSet marked;  // left vertices
  return sampled_opt_loop(m_, trial, trace, [&](int r, const OptTracker& opt) {
    std::vector<int> partner = matching_witness(*t_, m_.order, opt.opt_set());
    if (marked.contains(partner[r])) return false;
    marked.insert(partner[r]);
    return true;
  });
}

// ---------------------------------------------------------------------------
// Gammoid: mark every vertex on the canonical path.
// ---------------------------------------------------------------------------

GammoidEngine::GammoidEngine(std::shared_ptr<const GammoidMatroid> m, ValueOrder order,
                             double p)
    : MarkingEngine(make_ordered(m, std::move(order)),
                    checked_fraction(p, m->instance().mu)),
      g_(std::move(m)) {
  if (!g_->instance().node_disjoint)
    throw std::invalid_argument("path-marking rule needs a node-disjoint instance");
}

ElementSet GammoidEngine::forbidden_set(const ElementSet& x, const ElementSet& y,
                                        int r_star) const {
  ElementSet ox = greedy_opt(m_, x);
  auto sx = path_system_witness(*g_, ox);
  auto sy = path_system_witness(*g_, greedy_opt(m_, y));
  ElementSet target;
  for (int v : sy[r_star]) target.insert(v);
  ElementSet f;
  ox.for_each([&](int e) {
    for (int v : sx[e]) {
      if (target.contains(v)) {
        f.insert(e);
        return;
      }
    }
  });
  return f;
}

SelectionOutcome GammoidEngine::run(const ArrivalTrial& trial, bool trace) const {
  ElementSet marked;  // host vertices
  return sampled_opt_loop(m_, trial, trace, [&](int r, const OptTracker& opt) {
    auto paths = path_system_witness(*g_, opt.opt_set());
    for (int v : paths[r]) {
      if (marked.contains(v)) return false;
    }
    for (int v : paths[r]) marked.insert(v);
    return true;
  });
}

// ---------------------------------------------------------------------------
// Matching matroid: a covered arrival rides along; otherwise claim the
// canonical cover edge when both endpoints are free.
// ---------------------------------------------------------------------------

PackingEngine::PackingEngine(std::shared_ptr<const MatchingMatroid> m, ValueOrder order,
                             double p)
    : MarkingEngine(make_ordered(m, std::move(order)),
                    checked_fraction(p, m->instance().mu)),
      c_(std::move(m)) {}

ElementSet PackingEngine::forbidden_set(const ElementSet& x, const ElementSet& y,
                                        int r_star) const {
  ElementSet ox = greedy_opt(m_, x);
  auto cx = cover_witness(*c_, ox);
  auto cy = cover_witness(*c_, greedy_opt(m_, y));
  ElementSet target;  // cover edge of r_star, its own terminal removed
  target.insert(cy[r_star][0]);
  target.insert(cy[r_star][1]);
  target.erase(c_->instance().terminals[r_star]);
  ElementSet f;
  ox.for_each([&](int e) {
    if (target.contains(cx[e][0]) || target.contains(cx[e][1])) f.insert(e);
  });
  return f;
}

SelectionOutcome PackingEngine::run(const ArrivalTrial& trial, bool trace) const {
  ElementSet covered;  // host vertices
  const std::vector<int>& term = c_->instance().terminals;
  return sampled_opt_loop(m_, trial, trace, [&](int r, const OptTracker& opt) {
    if (covered.contains(term[r])) return true;  // already covered: no new marks
    auto cover = cover_witness(*c_, opt.opt_set());
    int u = cover[r][0], v = cover[r][1];
    if (covered.contains(u) || covered.contains(v)) return false;
    covered.insert(u);
    covered.insert(v);
    return true;
  });
}

// ---------------------------------------------------------------------------
// Graphic / hypergraphic: block when either endpoint of the oriented edge
// already heads an accepted arc.
// ---------------------------------------------------------------------------

GraphicEngine::GraphicEngine(std::shared_ptr<const GraphicMatroid> m, ValueOrder order,
                             double p)
    : MarkingEngine(make_ordered(m, std::move(order)), checked_fraction(p, 2)),
      g_(std::move(m)) {}

ElementSet GraphicEngine::forbidden_set(const ElementSet& x, const ElementSet& y,
                                        int r_star) const {
  ElementSet ox = greedy_opt(m_, x);
  auto ax = orient_away_from_roots(g_->instance().num_vertices, ox, pair_witness(*g_, ox));
  auto py = pair_witness(*g_, greedy_opt(m_, y));
  int a = py[r_star][0], b = py[r_star][1];
  ElementSet f;
  ox.for_each([&](int e) {
    if (ax[e][1] == a || ax[e][1] == b) f.insert(e);
  });
  return f;
}

SelectionOutcome GraphicEngine::run(const ArrivalTrial& trial, bool trace) const {
  std::vector<char> headed(g_->instance().num_vertices, 0);
  return sampled_opt_loop(m_, trial, trace, [&](int r, const OptTracker& opt) {
    auto arcs = orient_away_from_roots(g_->instance().num_vertices, opt.opt_set(),
                                       pair_witness(*g_, opt.opt_set()));
    int u = arcs[r][0], v = arcs[r][1];
    if (headed[u] || headed[v]) return false;
    headed[v] = 1;
    return true;
  });
}

HypergraphicEngine::HypergraphicEngine(std::shared_ptr<const HypergraphicMatroid> m,
                                       ValueOrder order, double p)
    : MarkingEngine(make_ordered(m, std::move(order)), checked_fraction(p, 2)),
      h_(std::move(m)) {}

ElementSet HypergraphicEngine::forbidden_set(const ElementSet& x, const ElementSet& y,
                                             int r_star) const {
  ElementSet ox = greedy_opt(m_, x);
  auto ax = orient_away_from_roots(h_->instance().num_vertices, ox,
                                   pair_witness(*h_, m_.order, ox));
  auto py = pair_witness(*h_, m_.order, greedy_opt(m_, y));
  int a = py[r_star][0], b = py[r_star][1];
  ElementSet f;
  ox.for_each([&](int e) {
    if (ax[e][1] == a || ax[e][1] == b) f.insert(e);
  });
  return f;
}

SelectionOutcome HypergraphicEngine::run(const ArrivalTrial& trial, bool trace) const {
  std::vector<char> headed(h_->instance().num_vertices, 0);
  return sampled_opt_loop(m_, trial, trace, [&](int r, const OptTracker& opt) {
    auto arcs = orient_away_from_roots(h_->instance().num_vertices, opt.opt_set(),
                                       pair_witness(*h_, m_.order, opt.opt_set()));
    int u = arcs[r][0], v = arcs[r][1];
    if (headed[u] || headed[v]) return false;
    headed[v] = 1;
    return true;
  });
}

// ---------------------------------------------------------------------------
// Framed: block on any marked spanning row, mark the injected row.
// ---------------------------------------------------------------------------

FramedEngine::FramedEngine(std::shared_ptr<const SparseLinearMatroid> m, ValueOrder order,
                           double p)
    : MarkingEngine(make_ordered(m, std::move(order)),
                    checked_fraction(p, m->instance().sparsity_k)),
      f_(std::move(m)) {}

ElementSet FramedEngine::forbidden_set(const ElementSet& x, const ElementSet&,
                                       int r_star) const {
  ElementSet ox = greedy_opt(m_, x);
  std::vector<int> inj = frame_injection(*f_, m_.order, ox);
  ElementSet rows;
  for (int row : circuit_rows(*f_, r_star)) rows.insert(row);
  ElementSet f;
  ox.for_each([&](int e) {
    if (rows.contains(inj[e])) f.insert(e);
  });
  return f;
}

SelectionOutcome FramedEngine::run(const ArrivalTrial& trial, bool trace) const {
  ElementSet marked;  // frame rows
  return sampled_opt_loop(m_, trial, trace, [&](int r, const OptTracker& opt) {
    for (int row : circuit_rows(*f_, r)) {
      if (marked.contains(row)) return false;
    }
    marked.insert(frame_injection(*f_, m_.order, opt.opt_set())[r]);
    return true;
  });
}

// ---------------------------------------------------------------------------
// Fixed-sample axis rules. Both snapshot J = OPT(R_s) when the sample ends
// and block on state derived from J alone; s = 0 degenerates to taking the
// very first arrival.
// ---------------------------------------------------------------------------

namespace {

// Take-first-arrival degenerate branch shared by the two axis rules.
SelectionOutcome first_arrival_only(const OrderedMatroid& m, const ArrivalTrial& trial,
                                    bool trace) {
  SelectionOutcome out;
  if (trial.arrival.empty()) return out;
  out.selected.insert(trial.arrival[0]);
  if (trace) {
    OptTracker opt(m);
    for (int i = 0; i < (int)trial.arrival.size(); ++i) {
      int r = trial.arrival[i];
      bool in_opt = opt.add(r);
      out.trace.push_back({i + 1, r, in_opt, i == 0, i == 0});
    }
  }
  return out;
}

template <class Attempt>
SelectionOutcome fixed_sample_loop(const OrderedMatroid& m, const ArrivalTrial& trial,
                                   bool trace, ElementSet& j_out, Attempt attempt) {
  OptTracker opt(m);
  SelectionOutcome out;
  int n = (int)trial.arrival.size();
  if (trace) out.trace.reserve(n);
  for (int i = 0; i < n; ++i) {
    int r = trial.arrival[i];
    bool in_opt = opt.add(r);
    if (i == trial.sample_size - 1) j_out = opt.opt_set();
    bool ok = false;
    if (i >= trial.sample_size && in_opt) {
      ok = attempt(r);
      if (ok) out.selected.insert(r);
    }
    if (trace) out.trace.push_back({i + 1, r, in_opt, ok, ok});
  }
  return out;
}

}  // namespace

SemiplanarEngine::SemiplanarEngine(OrderedMatroid m, double p)
    : MarkingEngine(std::move(m), checked_fraction(p, 4)) {}

ElementSet SemiplanarEngine::forbidden_set(const ElementSet& x, const ElementSet&,
                                           int r_star) const {
  int n = m_.id_space();
  ElementSet ox = greedy_opt(m_, x);
  ElementSet f;
  for (int v : neighbor_quad(ox, r_star, n)) {
    if (v >= 0 && v < n) f.insert(v);
  }
  return f;
}

SelectionOutcome SemiplanarEngine::run(const ArrivalTrial& trial, bool trace) const {
  if (trial.sample_size == 0) return first_arrival_only(m_, trial, trace);
  int n = m_.id_space();
  ElementSet j_set;
  ElementSet blocked;  // axis coordinates shifted +1 so sentinels fit
  return fixed_sample_loop(m_, trial, trace, j_set, [&](int r) {
    int a = pre_in(j_set, r) + 1;
    int b = nex_in(j_set, r, n) + 1;
    if (blocked.contains(a) || blocked.contains(b)) return false;
    blocked.insert(a);
    blocked.insert(b);
    return true;
  });
}

LaminarEngine::LaminarEngine(std::shared_ptr<const LaminarMatroid> m, ValueOrder order,
                             double p)
    : MarkingEngine(make_ordered(m, std::move(order)), checked_fraction(p, 3)),
      l_(std::move(m)) {}

ElementSet LaminarEngine::forbidden_set(const ElementSet& x, const ElementSet&,
                                        int r_star) const {
  ElementSet ox = greedy_opt(m_, x);
  ElementSet f;
  if (ox.empty()) return f;
  int n = m_.id_space();
  for (int v : representative_triple(*l_, ox, r_star)) {
    if (v >= 0 && v < n) f.insert(v);
  }
  return f;
}

SelectionOutcome LaminarEngine::run(const ArrivalTrial& trial, bool trace) const {
  if (trial.sample_size == 0) return first_arrival_only(m_, trial, trace);
  ElementSet j_set;
  ElementSet blocked;  // representatives already claimed
  return fixed_sample_loop(m_, trial, trace, j_set, [&](int r) {
    int rep = representative(*l_, j_set, r);
    if (blocked.contains(rep)) return false;
    blocked.insert(rep);
    return true;
  });
}

}  // namespace msp
