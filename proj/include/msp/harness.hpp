#pragma once

#include <map>
#include <string>
#include <vector>

#include "msp/engines.hpp"
#include "msp/generators.hpp"

namespace msp {

// ---------------------------------------------------------------------------
// Trial orchestration and the four competitiveness estimators. A plan pins
// down everything (instance, engine, trial count, master seed), so reports
// are pure functions of the plan; the worker width only splits the loop.
// ---------------------------------------------------------------------------

// Weight presets by value rank, best first. Any nonincreasing nonnegative
// vector is compatible with the value order.
std::vector<double> decreasing_weights(int n);  // n, n-1, ..., 1
std::vector<double> harmonic_weights(int n);    // 1, 1/2, 1/3, ...
std::vector<double> geometric_weights(int n);   // 1, 1/2, 1/4, ...
std::vector<double> weights_by_preset(const std::string& name, int n);
bool compatible_weights(const std::vector<double>& w);

// Which oracle families an engine id can run on.
bool engine_supports(const std::string& engine, const std::string& family);

// Engine factory over a built instance. param is the sample fraction for the
// marking rules (negative picks the family default) and for improving-greedy
// (s = round(param * n), default 1/2); the remaining engines ignore it.
// weights (value-rank order) only feed the tpa rule; empty = decreasing.
EnginePtr make_engine(const std::string& engine, const BuiltInstance& inst,
                      double param = -1, const std::vector<double>& weights = {});

struct TrialPlan {
  std::string instance_id;
  std::string family;
  EnginePtr engine;
  int trials = 1;
  uint64_t master_seed = 0;
  int width = 1;                // worker threads; aggregates identical at any width
  double param = -1;            // echoed into the report
  std::vector<double> weights;  // utility weights, value-rank order; empty = decreasing
  std::map<std::string, double> alpha_bounds;  // measure name -> theoretical ratio
};

struct MeasureStat {
  double estimate = 0;  // competitive-ratio estimate (infinity when starved)
  double ci95 = 0;      // 95% half width, delta method through the ratio
  double bound = 0;     // declared theoretical ratio, 0 = none
  long long trials = 0;
  bool insufficient = false;  // fewer than 30 successes behind the estimate
};

struct CompetitivenessReport {
  std::string instance_id;
  std::string family;
  std::string engine;
  int n = 0;
  int rank = 0;
  double param = -1;
  long long trials = 0;
  uint64_t seed = 0;
  std::vector<int> opt;               // optimum elements, best first
  std::vector<double> opt_frequency;  // selection frequency, aligned with opt
  std::vector<double> ordinal_curve;  // E|ALG cap top-k|, k = 1..n
  std::vector<int> opt_curve;         // |OPT cap top-k|, k = 1..n
  MeasureStat utility, ordinal, probability, intersection;
  std::vector<std::string> warnings;
};

// Runs the plan's trials (seeded per index from the master seed), then
// assembles the four ratio estimates. The probability estimate is the
// reciprocal of the smallest per-optimum-element frequency; the ordinal
// estimate is the worst per-k ratio of the two curves.
CompetitivenessReport estimate_measures(const TrialPlan& plan);

// Probability is the strongest measure and ordinal dominates utility; checks
// both orderings up to 3x the summed interval half widths. A single-trial
// report is vacuously fine and gains a warning.
bool dominance_check(CompetitivenessReport& report);

// Exact expectations over every arrival order and every internal draw of the
// engine. Guarded to n <= 8.
struct ExactMeasures {
  std::vector<double> element_probability;  // by element id
  std::vector<double> ordinal_curve;        // E|ALG cap top-k|, k = 1..n
  std::vector<int> opt_curve;               // |OPT cap top-k|, k = 1..n
  double expected_utility = 0;
  double expected_intersection = 0;
  double opt_utility = 0;
  int opt_size = 0;
};
ExactMeasures exhaustive_run(const OnlineEngine& engine, std::vector<double> weights = {});

}  // namespace msp
