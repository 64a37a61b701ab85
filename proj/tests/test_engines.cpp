#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include "fixtures.hpp"
#include "msp/engines.hpp"
#include "msp/matroid.hpp"
#include "msp/rng.hpp"
#include "msp/zoo.hpp"

using namespace msp;

namespace {

template <class F>
void each_permutation(int n, F f) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    f(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

ArrivalTrial fixed_trial(std::vector<int> arrival, int s) {
  ArrivalTrial t;
  t.arrival = std::move(arrival);
  t.sample_size = s;
  return t;
}

// Mean of `stat` over all arrival orders and the engine's internal randomness.
template <class F>
double exhaustive_mean(const OnlineEngine& e, F stat) {
  double total = 0.0, norm = 0.0;
  each_permutation(e.num_elements(), [&](const std::vector<int>& perm) {
    norm += 1.0;
    for (const TrialCase& c : e.enumerate_cases(perm))
      total += c.weight * stat(e.run(c.trial));
  });
  return total / norm;
}

// Structural invariants every engine must satisfy on every replay case:
// picks are independent, the trace matches the selection, nothing is taken
// during the sample, and s = n degenerates to the empty pick.
void check_engine_invariants(const OnlineEngine& e, bool accepted_implies_opt) {
  int n = e.num_elements();
  const OrderedMatroid& m = e.ordered();
  each_permutation(n, [&](const std::vector<int>& perm) {
    double wsum = 0.0;
    for (const TrialCase& c : e.enumerate_cases(perm)) {
      REQUIRE(c.weight > 0.0);
      wsum += c.weight;
      SelectionOutcome out = e.run(c.trial, true);
      REQUIRE(m.independent(out.selected));
      REQUIRE((int)out.trace.size() == n);
      ElementSet accepted;
      for (const StepRecord& rec : out.trace) {
        if (!rec.accepted) continue;
        accepted.insert(rec.element);
        REQUIRE(rec.position > c.trial.sample_size);
        if (accepted_implies_opt) {
          bool degenerate_first = c.trial.sample_size == 0 && rec.position == 1;
          REQUIRE((rec.in_current_opt || degenerate_first));
        }
      }
      REQUIRE(accepted == out.selected);
      if (c.trial.sample_size == n) REQUIRE(out.selected.empty());
    }
    REQUIRE(std::abs(wsum - 1.0) < 1e-9);
  });
}

std::shared_ptr<const GraphicMatroid> triangle_pendant() {
  // edges e0={0,1}, e1={1,2}, e2={0,2}, e3={2,3}; rank 3
  return std::make_shared<GraphicMatroid>(
      GraphicInstance{4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}});
}

}  // namespace

// ---------------------------------------------------------------------------
// Guarantee formulas.
// ---------------------------------------------------------------------------

TEST_CASE("optimal fractions and ratios match the closed forms") {
  CHECK(optimal_sample_fraction(1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(optimal_sample_fraction(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(optimal_sample_fraction(3) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(optimal_ratio(1) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(optimal_ratio(2) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(optimal_ratio(3) == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-15));
  CHECK(optimal_ratio(4) == doctest::Approx(std::pow(4.0, 4.0 / 3.0)).epsilon(1e-15));

  // the ratio is exactly the reciprocal of the bound at the optimal fraction
  for (int k = 1; k <= 6; ++k) {
    SelectionGuarantee g = selection_guarantee(k);
    CHECK(g.blocking_size == k);
    CHECK(g.ratio * selection_probability_bound(k, g.sample_fraction) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(optimal_sample_fraction(0), std::invalid_argument);
  CHECK_THROWS_AS(optimal_ratio(0), std::invalid_argument);
  CHECK_THROWS_AS(selection_probability_bound(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(selection_probability_bound(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(selection_probability_bound(0, 0.5), std::invalid_argument);
}

TEST_CASE("finite-n bound agrees with exact rational evaluation") {
  // frozen values computed with exact fraction arithmetic
  CHECK(selection_probability_bound_discrete(20, 2, 0.5) ==
        doctest::Approx(5242881.0 / 20971520.0).epsilon(1e-14));
  CHECK(selection_probability_bound_discrete(20, 2, 0.5) > 0.25);
  CHECK(selection_probability_bound_discrete(6, 1, 1.0 / 3.0) ==
        doctest::Approx(4036.0 / 10935.0).epsilon(1e-14));
  CHECK(selection_probability_bound_discrete(1, 5, 0.0) == 1.0);
  CHECK(selection_probability_bound_discrete(1000, 1, std::exp(-1.0)) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-9));

  // the finite-n bound dominates the limit expression
  for (int n : {3, 8, 20, 40}) {
    for (int k = 1; k <= 4; ++k) {
      for (double p : {0.1, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.9}) {
        CHECK(selection_probability_bound_discrete(n, k, p) >=
              selection_probability_bound(k, p) - 1e-9);
      }
    }
  }

  CHECK_THROWS_AS(selection_probability_bound_discrete(0, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(selection_probability_bound_discrete(5, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(selection_probability_bound_discrete(5, 1, 1.5), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Single-choice rule.
// ---------------------------------------------------------------------------

TEST_CASE("single-choice rule hits the top element exactly as the formula says") {
  // Pr(top selected) under s ~ Bin(n, p) equals the finite-n bound at k = 1;
  // the two code paths are independent, so equality pins both.
  for (double p : {1.0 / 3.0, 0.5}) {
    BestSoFarEngine e(ordered_uniform({6, 1}, ValueOrder::identity(6)), p);
    double hit = exhaustive_mean(
        e, [](const SelectionOutcome& out) { return out.selected.contains(0) ? 1.0 : 0.0; });
    CHECK(hit == doctest::Approx(selection_probability_bound_discrete(6, 1, p))
                     .epsilon(1e-12));
  }
  BestSoFarEngine def(ordered_uniform({4, 1}, ValueOrder::identity(4)));
  CHECK(def.sample_fraction() == doctest::Approx(std::exp(-1.0)));
  CHECK_THROWS_AS(BestSoFarEngine(ordered_uniform({4, 1}, ValueOrder::identity(4)), 1.5),
                  std::invalid_argument);
}

TEST_CASE("single-choice rule small runs") {
  BestSoFarEngine e(ordered_uniform({3, 1}, ValueOrder::identity(3)), 1.0 / 3.0);
  CHECK(e.run(fixed_trial({2, 0, 1}, 1)).selected == ElementSet::of({0}));
  CHECK(e.run(fixed_trial({2, 0, 1}, 3)).selected.empty());
  // never takes a second element even if a better one shows up
  CHECK(e.run(fixed_trial({2, 1, 0}, 1)).selected == ElementSet::of({1}));

  // with a sample of one, the top element is picked in 3 of the 6 orders
  int hits = 0;
  each_permutation(3, [&](const std::vector<int>& perm) {
    hits += e.run(fixed_trial(perm, 1)).selected.contains(0);
  });
  CHECK(hits == 3);

  BestSoFarEngine one(ordered_uniform({1, 1}, ValueOrder::identity(1)), 0.5);
  CHECK(one.run(fixed_trial({0}, 0)).selected == ElementSet::of({0}));

  check_engine_invariants(e, true);
}

// ---------------------------------------------------------------------------
// Marking rules, one per family: structural invariants on every replay case
// plus one frozen run worked out by hand from the witness definitions.
// ---------------------------------------------------------------------------

TEST_CASE("transversal rule") {
  auto t = std::make_shared<TransversalMatroid>(fx::transversal6());
  TransversalEngine e(t, ValueOrder::identity(6));
  CHECK(e.name() == "transversal");
  CHECK(e.blocking_size_bound() == 1);
  CHECK(e.sample_fraction() == doctest::Approx(std::exp(-1.0)));

  // e3 claims left vertex 2 via the canonical matching of {0,3,4} -> next
  // arrival e4 would need 2 as well but the optimum evicts e4 later; e1
  // claims vertex 1. Worked by hand against the matching witness.
  CHECK(e.run(fixed_trial({3, 0, 4, 1, 5, 2}, 2)).selected == ElementSet::of({1, 4}));

  check_engine_invariants(e, true);
}

TEST_CASE("gammoid path rule") {
  auto g = std::make_shared<GammoidMatroid>(fx::diamond_gammoid());
  GammoidEngine e(g, ValueOrder::identity(3));
  CHECK(e.name() == "gammoid");
  CHECK(e.blocking_size_bound() == 2);

  // e2 locks path 1-3-6, which forces nothing against e0's path 0-2-4
  CHECK(e.run(fixed_trial({1, 2, 0}, 1)).selected == ElementSet::of({0, 2}));

  check_engine_invariants(e, true);
  check_engine_invariants(GammoidEngine(std::make_shared<GammoidMatroid>(fx::crossing_gammoid()),
                                        ValueOrder::identity(3)),
                          true);

  // arc-capacitated instances have no node-disjoint path witnesses
  CHECK_THROWS_AS(GammoidEngine(std::make_shared<GammoidMatroid>(fx::fan_acg()),
                                ValueOrder::identity(5)),
                  std::invalid_argument);
}

TEST_CASE("matching cover rule") {
  auto c = std::make_shared<MatchingMatroid>(fx::path5_matching());
  PackingEngine e(c, ValueOrder::identity(3));
  CHECK(e.name() == "matching");
  CHECK(e.blocking_size_bound() == 2);

  // e0 claims edge {0,1}; the last arrival drops out of the optimum
  CHECK(e.run(fixed_trial({1, 0, 2}, 1)).selected == ElementSet::of({0}));

  check_engine_invariants(e, true);

  // a single host edge covering two terminals rides the second one along
  auto tri = std::make_shared<MatchingMatroid>(
      MatchingInstance{3, {{0, 1}, {1, 2}, {0, 2}}, {0, 1}, 2});
  PackingEngine both(tri, ValueOrder::identity(2));
  CHECK(both.run(fixed_trial({0, 1}, 0)).selected == ElementSet::of({0, 1}));
  check_engine_invariants(both, true);
}

TEST_CASE("graphic orientation rule") {
  GraphicEngine e(triangle_pendant(), ValueOrder::identity(4));
  CHECK(e.name() == "graphic");
  CHECK(e.blocking_size_bound() == 2);
  CHECK(e.sample_fraction() == doctest::Approx(0.5));

  // e3 heads vertex 3, e0 heads vertex 1, then e1 wants head 2 of a headed
  // tail 1 -> blocked
  CHECK(e.run(fixed_trial({2, 3, 0, 1}, 1)).selected == ElementSet::of({0, 3}));

  check_engine_invariants(e, true);
}

TEST_CASE("hypergraphic orientation rule") {
  auto h = std::make_shared<HypergraphicMatroid>(fx::hyper4());
  HypergraphicEngine e(h, ValueOrder::identity(4));
  CHECK(e.name() == "hypergraphic");
  CHECK(e.blocking_size_bound() == 2);
  check_engine_invariants(e, true);
}

TEST_CASE("frame row rule") {
  FramedEngine e(std::make_shared<SparseLinearMatroid>(fx::gf2_3x5()),
                 ValueOrder::identity(5));
  CHECK(e.name() == "framed");
  CHECK(e.blocking_size_bound() == 3);
  check_engine_invariants(e, true);

  // parallel columns: the second copy leaves the optimum immediately
  FramedEngine par(std::make_shared<SparseLinearMatroid>(fx::gf3_parallel()),
                   ValueOrder::identity(3));
  CHECK(par.blocking_size_bound() == 2);
  check_engine_invariants(par, true);
}

TEST_CASE("axis interval rule") {
  SemiplanarEngine e(make_ordered(std::make_shared<GammoidMatroid>(fx::fan_acg()),
                                  ValueOrder::identity(5)));
  CHECK(e.name() == "semiplanar");
  CHECK(e.blocking_size_bound() == 4);

  // J = {0,2}; taking e4 blocks axis slots 2 and right-sentinel, which kills
  // both later optimum members
  CHECK(e.run(fixed_trial({2, 0, 4, 1, 3}, 2)).selected == ElementSet::of({4}));

  // s = 0 degenerates to the first arrival
  CHECK(e.run(fixed_trial({3, 1, 0, 2, 4}, 0)).selected == ElementSet::of({3}));

  check_engine_invariants(e, true);
}

TEST_CASE("interval representative rule") {
  LaminarEngine e(std::make_shared<LaminarMatroid>(fx::laminar8()),
                  ValueOrder::identity(8));
  CHECK(e.name() == "laminar");
  CHECK(e.blocking_size_bound() == 3);

  // J = {2,5,7}: e0 claims representative 2, e4 claims 5
  CHECK(e.run(fixed_trial({5, 2, 7, 0, 6, 1, 3, 4}, 3)).selected == ElementSet::of({0, 4}));

  LaminarEngine small(std::make_shared<LaminarMatroid>(
                          LaminarInstance{5, {{0, 1}, {2, 4}, {0, 4}}, {1, 2, 2}}),
                      ValueOrder::identity(5));
  check_engine_invariants(small, true);
}

// ---------------------------------------------------------------------------
// Baselines.
// ---------------------------------------------------------------------------

TEST_CASE("plain greedy") {
  GreedyEngine e(ordered_uniform({4, 2}, ValueOrder::identity(4)));
  CHECK(e.name() == "greedy");
  CHECK(e.run(fixed_trial({3, 1, 2, 0}, 0)).selected == ElementSet::of({3, 1}));
  check_engine_invariants(GreedyEngine(make_ordered(
                              std::make_shared<PartitionMatroid>(fx::partition6()),
                              ValueOrder::identity(6))),
                          false);
}

TEST_CASE("improving greedy matches hand counts") {
  CHECK_THROWS_AS(ImprovingGreedyEngine(ordered_uniform({3, 1}, ValueOrder::identity(3)), -1),
                  std::invalid_argument);
  CHECK_THROWS_AS(ImprovingGreedyEngine(ordered_uniform({3, 1}, ValueOrder::identity(3)), 4),
                  std::invalid_argument);

  // rank 1, n = 3, sample 1: top taken in 3 of 6 orders; 5 improving
  // post-sample arrivals in total across orders
  ImprovingGreedyEngine e3(ordered_uniform({3, 1}, ValueOrder::identity(3)), 1);
  CHECK(e3.name() == "improving-greedy");
  CHECK(e3.fixed_sample_size() == 1);
  int hits = 0, improving = 0;
  each_permutation(3, [&](const std::vector<int>& perm) {
    SelectionOutcome out = e3.run(fixed_trial(perm, 1), true);
    hits += out.selected.contains(0);
    for (const StepRecord& rec : out.trace)
      improving += rec.position > 1 && rec.in_current_opt;
  });
  CHECK(hits == 3);
  CHECK(improving == 5);

  // rank 2, n = 6, sample 3. Post-sample improving arrivals follow the
  // harmonic law: sum over the 720 orders is 720 * 2 * (1/4+1/5+1/6) = 888.
  ImprovingGreedyEngine e6(ordered_uniform({6, 2}, ValueOrder::identity(6)), 3);
  long improving6 = 0;
  std::vector<long> top_hits(7, 0);  // top_hits[j] = sum |pick & best-j|
  each_permutation(6, [&](const std::vector<int>& perm) {
    SelectionOutcome out = e6.run(fixed_trial(perm, 3), true);
    for (const StepRecord& rec : out.trace)
      improving6 += rec.position > 3 && rec.in_current_opt;
    for (int j = 1; j <= 6; ++j) {
      for (int v = 0; v < j; ++v) top_hits[j] += out.selected.contains(v);
    }
  });
  CHECK(improving6 == 888);
  std::vector<long> expected = {0, 336, 672, 804, 840, 840, 840};
  for (int j = 1; j <= 6; ++j) CHECK(top_hits[j] == expected[j]);

  // every best-j prefix is hit at a rate above 1 - ln 2
  for (int j = 1; j <= 6; ++j) {
    double rate = top_hits[j] / 720.0 / std::min(j, 2);
    CHECK(rate >= 1.0 - std::log(2.0));
  }

  check_engine_invariants(e6, true);
}

TEST_CASE("dyadic window rule") {
  CHECK_THROWS_AS(DyadicWindowEngine(6, 2, ValueOrder::identity(6)), std::invalid_argument);
  CHECK_THROWS_AS(DyadicWindowEngine(4, 3, ValueOrder::identity(4)), std::invalid_argument);
  CHECK_THROWS_AS(DyadicWindowEngine(2, 4, ValueOrder::identity(2)), std::invalid_argument);

  DyadicWindowEngine e(8, 4, ValueOrder::identity(8));
  CHECK(e.name() == "kleinberg");
  // worked by hand: thresholds are element 3 (positions 3-4) and element 5
  // (positions 5-8), budgets 1 and 2
  CHECK(e.run(fixed_trial({3, 1, 5, 0, 7, 2, 4, 6}, 0)).selected ==
        ElementSet::of({0, 2, 3, 4}));

  // full-rank instance: every threshold is undefined, budgets cover all slots
  DyadicWindowEngine full(4, 4, ValueOrder::identity(4));
  each_permutation(4, [&](const std::vector<int>& perm) {
    CHECK(full.run(fixed_trial(perm, 0)).selected == ElementSet::full(4));
  });

  // rank one: only the very first arrival
  DyadicWindowEngine first(4, 1, ValueOrder::identity(4));
  CHECK(first.run(fixed_trial({2, 3, 0, 1}, 0)).selected == ElementSet::of({2}));

  check_engine_invariants(e, false);
}

TEST_CASE("timed dyadic class rule") {
  CHECK_THROWS_AS(TimedUniformEngine(4, 1, ValueOrder::identity(4)), std::invalid_argument);

  TimedUniformEngine e(6, 4, ValueOrder::identity(6));
  CHECK(e.name() == "uniform-variant");
  CHECK_THROWS_AS(e.run(fixed_trial({0, 1, 2, 3, 4, 5}, 0)), std::invalid_argument);

  // too few early arrivals: every class threshold is undefined, nothing taken
  ArrivalTrial sparse = fixed_trial({0, 1, 2, 3, 4, 5}, 0);
  sparse.times = {0.06, 0.3, 0.35, 0.6, 0.7, 0.9};
  CHECK(e.run(sparse).selected.empty());

  // crowded prefix: class-1 threshold is element 7 (4th best of {4,5,6,7}),
  // class-0 threshold is element 7 again; budgets 1 and 2
  TimedUniformEngine e8(8, 4, ValueOrder::identity(8));
  ArrivalTrial busy = fixed_trial({4, 5, 6, 7, 0, 1, 2, 3}, 0);
  busy.times = {0.13, 0.15, 0.17, 0.2, 0.3, 0.35, 0.4, 0.6};
  CHECK(e8.run(busy).selected == ElementSet::of({0, 3}));

  // draw_extras produces n sorted times in [0,1)
  Rng rng(7);
  ArrivalTrial t = fixed_trial({0, 1, 2, 3, 4, 5}, 0);
  e.draw_extras(t, rng);
  REQUIRE((int)t.times.size() == 6);
  CHECK(std::is_sorted(t.times.begin(), t.times.end()));
  CHECK(t.times.front() >= 0.0);
  CHECK(t.times.back() < 1.0);

  check_engine_invariants(TimedUniformEngine(5, 2, ValueOrder::identity(5)), false);
}

TEST_CASE("timed rule sampler agrees with its exhaustive law") {
  // Two independent descriptions of the same randomness: per-element hit
  // rates from Monte Carlo draws must match the weighted enumeration.
  TimedUniformEngine e(5, 2, ValueOrder::identity(5));
  std::vector<int> arrival = {0, 1, 2, 3, 4};

  std::vector<double> exact(5, 0.0);
  for (const TrialCase& c : e.enumerate_cases(arrival)) {
    SelectionOutcome out = e.run(c.trial);
    out.selected.for_each([&](int v) { exact[v] += c.weight; });
  }

  const int trials = 100000;
  std::vector<double> freq(5, 0.0);
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::for_trial(99, i);
    ArrivalTrial t = fixed_trial(arrival, 0);
    e.draw_extras(t, rng);
    e.run(t).selected.for_each([&](int v) { freq[v] += 1.0 / trials; });
  }
  for (int v = 0; v < 5; ++v) {
    double sigma = std::sqrt(std::max(exact[v] * (1 - exact[v]), 1e-6) / trials);
    CHECK(std::abs(freq[v] - exact[v]) <= 3 * sigma + 1e-3);
  }
}

TEST_CASE("weight threshold rule") {
  OrderedMatroid u4 = ordered_uniform({4, 2}, ValueOrder::identity(4));
  CHECK_THROWS_AS(ThresholdPriceEngine(u4, {8, 4, 2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdPriceEngine(u4, {8, 4, 4, 1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(ThresholdPriceEngine(u4, {8, 4, 2, 1}, 0), std::invalid_argument);

  ThresholdPriceEngine e(u4, {8, 4, 2, 1}, 2);
  CHECK(e.name() == "tpa");

  // sample {2,0} -> top weight 8, tau = 1 -> cutoff 4: only element 1 passes
  ArrivalTrial t = fixed_trial({2, 0, 3, 1}, 2);
  t.aux = 1;
  CHECK(e.run(t).selected == ElementSet::of({1}));
  // tau = 0 keeps the cutoff at 8: nothing passes
  t.aux = 0;
  CHECK(e.run(t).selected.empty());

  // empty sample leaves the cutoff unset and takes nothing
  CHECK(e.run(fixed_trial({2, 0, 3, 1}, 0)).selected.empty());

  // an all-loop sample behaves like an empty one
  auto loopy = std::make_shared<ExplicitMatroid>(
      2, std::vector<ElementSet>{ElementSet(), ElementSet::of({0})});
  ThresholdPriceEngine lp(make_ordered(loopy, ValueOrder::identity(2)), {2, 1}, 1);
  CHECK(lp.run(fixed_trial({1, 0}, 1)).selected.empty());

  // case weights: (n+1) sample sizes x tau ladder, binomial marginals
  auto cases = e.enumerate_cases({0, 1, 2, 3});
  CHECK((int)cases.size() == 5 * 2);
  double w3 = 0.0;
  for (const TrialCase& c : cases) {
    if (c.trial.sample_size == 3) w3 += c.weight;
  }
  CHECK(w3 == doctest::Approx(4.0 / 16.0).epsilon(1e-12));

  check_engine_invariants(
      ThresholdPriceEngine(ordered_uniform({5, 2}, ValueOrder::identity(5)),
                           {16, 8, 4, 2, 1}, 2),
      false);
}

TEST_CASE("sampled extras follow the declared laws") {
  auto t = std::make_shared<TransversalMatroid>(fx::transversal6());
  TransversalEngine e(t, ValueOrder::identity(6), 0.5);
  double mean = 0.0;
  const int trials = 4000;
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::for_trial(5, i);
    ArrivalTrial trial = fixed_trial({0, 1, 2, 3, 4, 5}, 0);
    e.draw_extras(trial, rng);
    REQUIRE(trial.sample_size >= 0);
    REQUIRE(trial.sample_size <= 6);
    CHECK(trial.times.empty());
    CHECK(trial.aux == 0);
    mean += trial.sample_size / (double)trials;
  }
  // Bin(6, 1/2): mean 3, sd per trial sqrt(1.5)
  CHECK(std::abs(mean - 3.0) <= 4 * std::sqrt(1.5 / trials));
}
