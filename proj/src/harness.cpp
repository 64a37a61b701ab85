#include "msp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace msp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mean_sd(const std::vector<double>& xs, double* sd) {
  long long t = (long long)xs.size();
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= (double)t;
  double var = 0;
  for (double x : xs) var += (x - mean) * (x - mean);
  *sd = t > 1 ? std::sqrt(var / (double)(t - 1)) : 0.0;
  return mean;
}

// ratio numer/mean with a delta-method interval from the mean's standard error
MeasureStat ratio_stat(double numer, double mean, double se, long long successes,
                       long long trials) {
  MeasureStat s;
  s.trials = trials;
  if (mean <= 0) {
    s.estimate = kInf;
    s.insufficient = true;
    return s;
  }
  s.estimate = numer / mean;
  s.ci95 = 1.96 * se * numer / (mean * mean);
  s.insufficient = successes < 30;
  return s;
}

}  // namespace

std::vector<double> decreasing_weights(int n) {
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) w[k] = n - k;
  return w;
}

std::vector<double> harmonic_weights(int n) {
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) w[k] = 1.0 / (k + 1);
  return w;
}

std::vector<double> geometric_weights(int n) {
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) w[k] = std::ldexp(1.0, -k);
  return w;
}

std::vector<double> weights_by_preset(const std::string& name, int n) {
  if (name == "decreasing" || name.empty()) return decreasing_weights(n);
  if (name == "harmonic") return harmonic_weights(n);
  if (name == "geometric") return geometric_weights(n);
  throw std::invalid_argument("unknown weight preset: " + name);
}

bool compatible_weights(const std::vector<double>& w) {
  for (size_t k = 0; k < w.size(); ++k) {
    if (w[k] < 0 || !std::isfinite(w[k])) return false;
    if (k > 0 && w[k] > w[k - 1]) return false;
  }
  return true;
}

bool engine_supports(const std::string& engine, const std::string& family) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"classical", {}},  // empty = any family
      {"greedy", {}},
      {"improving-greedy", {}},
      {"tpa", {}},
      {"transversal", {"transversal"}},
      {"gammoid", {"gammoid"}},
      {"matching", {"matching"}},
      {"graphic", {"graphic"}},
      {"hypergraphic", {"hypergraphic"}},
      {"framed", {"sparse-linear"}},
      {"semiplanar", {"gammoid", "laminar"}},
      {"laminar", {"laminar"}},
      {"kleinberg", {"uniform"}},
      {"uniform-variant", {"uniform"}},
  };
  auto it = table.find(engine);
  if (it == table.end()) return false;
  if (it->second.empty()) return true;
  return std::find(it->second.begin(), it->second.end(), family) != it->second.end();
}

EnginePtr make_engine(const std::string& engine, const BuiltInstance& inst, double param,
                      const std::vector<double>& weights) {
  if (!engine_supports(engine, inst.family))
    throw std::invalid_argument("engine " + engine + " does not support family " +
                                inst.family);
  const OrderedMatroid& m = inst.ordered;
  int n = m.num_elements();
  if (engine == "classical") return std::make_shared<BestSoFarEngine>(m, param);
  if (engine == "greedy") return std::make_shared<GreedyEngine>(m);
  if (engine == "improving-greedy") {
    double f = param < 0 ? 0.5 : param;
    int s = std::clamp((int)std::llround(f * n), 0, n);
    return std::make_shared<ImprovingGreedyEngine>(m, s);
  }
  if (engine == "tpa") {
    std::vector<double> wv = weights.empty() ? decreasing_weights(n) : weights;
    if ((int)wv.size() != n) throw std::invalid_argument("tpa needs one weight per element");
    std::vector<double> by_id(m.id_space(), 0.0);
    std::vector<int> order = m.elements_by_value();
    for (int k = 0; k < n; ++k) by_id[order[k]] = wv[k];
    return std::make_shared<ThresholdPriceEngine>(m, std::move(by_id), inst.rank);
  }
  if (engine == "kleinberg" || engine == "uniform-variant") {
    const auto* u = std::get_if<UniformInstance>(&inst.instance);
    if (!u) throw std::invalid_argument(engine + " needs a uniform instance");
    if (engine == "kleinberg")
      return std::make_shared<DyadicWindowEngine>(u->n, u->rho, m.order);
    return std::make_shared<TimedUniformEngine>(u->n, u->rho, m.order);
  }
  if (engine == "transversal") {
    auto p = std::dynamic_pointer_cast<const TransversalMatroid>(m.matroid);
    if (!p) throw std::invalid_argument("transversal engine needs a transversal oracle");
    return std::make_shared<TransversalEngine>(p, m.order, param);
  }
  if (engine == "gammoid") {
    auto p = std::dynamic_pointer_cast<const GammoidMatroid>(m.matroid);
    if (!p) throw std::invalid_argument("gammoid engine needs a gammoid oracle");
    return std::make_shared<GammoidEngine>(p, m.order, param);
  }
  if (engine == "matching") {
    auto p = std::dynamic_pointer_cast<const MatchingMatroid>(m.matroid);
    if (!p) throw std::invalid_argument("matching engine needs a matching oracle");
    return std::make_shared<PackingEngine>(p, m.order, param);
  }
  if (engine == "graphic") {
    auto p = std::dynamic_pointer_cast<const GraphicMatroid>(m.matroid);
    if (!p) throw std::invalid_argument("graphic engine needs a graphic oracle");
    return std::make_shared<GraphicEngine>(p, m.order, param);
  }
  if (engine == "hypergraphic") {
    auto p = std::dynamic_pointer_cast<const HypergraphicMatroid>(m.matroid);
    if (!p) throw std::invalid_argument("hypergraphic engine needs a hypergraphic oracle");
    return std::make_shared<HypergraphicEngine>(p, m.order, param);
  }
  if (engine == "framed") {
    auto p = std::dynamic_pointer_cast<const SparseLinearMatroid>(m.matroid);
    if (!p) throw std::invalid_argument("framed engine needs a sparse-linear oracle");
    return std::make_shared<FramedEngine>(p, m.order, param);
  }
  if (engine == "laminar") {
    auto p = std::dynamic_pointer_cast<const LaminarMatroid>(m.matroid);
    if (!p) throw std::invalid_argument("laminar engine needs a laminar oracle");
    return std::make_shared<LaminarEngine>(p, m.order, param);
  }
  if (engine == "semiplanar") return std::make_shared<SemiplanarEngine>(m, param);
  throw std::invalid_argument("unknown engine: " + engine);
}

CompetitivenessReport estimate_measures(const TrialPlan& plan) {
  if (!plan.engine) throw std::invalid_argument("plan has no engine");
  if (plan.trials < 1) throw std::invalid_argument("plan needs at least one trial");
  const OnlineEngine& eng = *plan.engine;
  if (!plan.family.empty() && !engine_supports(eng.name(), plan.family))
    throw std::invalid_argument("engine " + eng.name() + " does not support family " +
                                plan.family);
  const OrderedMatroid& m = eng.ordered();
  int n = m.num_elements();
  std::vector<int> by_value = m.elements_by_value();
  std::vector<double> w = plan.weights.empty() ? decreasing_weights(n) : plan.weights;
  if ((int)w.size() != n || !compatible_weights(w))
    throw std::invalid_argument("weight vector incompatible with the value order");
  std::vector<int> rank_of(m.id_space(), -1);
  for (int k = 0; k < n; ++k) rank_of[by_value[k]] = k;

  ElementSet opt = greedy_opt(m);
  std::vector<int> opt_sorted = sorted_by_value(m, opt);
  double opt_weight = 0;
  for (int e : opt_sorted) opt_weight += w[rank_of[e]];

  long long t_count = plan.trials;
  int width = std::clamp(plan.width, 1, 64);

  struct Acc {
    std::vector<long long> elem, curve, curve_sq;
    long long inter = 0, inter_sq = 0;
  };
  std::vector<Acc> accs(width);
  std::vector<double> util((size_t)t_count);

  auto worker = [&](int j) {
    Acc& a = accs[j];
    a.elem.assign(m.id_space(), 0);
    a.curve.assign(n + 1, 0);
    a.curve_sq.assign(n + 1, 0);
    std::vector<char> sel(n, 0);
    for (long long i = t_count * j / width; i < t_count * (j + 1) / width; ++i) {
      Rng rng = Rng::for_trial(plan.master_seed, (uint64_t)i);
      ArrivalTrial trial;
      trial.arrival = by_value;
      shuffle_in_place(trial.arrival, rng);
      eng.draw_extras(trial, rng);
      ElementSet got = eng.run(trial).selected;
      std::fill(sel.begin(), sel.end(), 0);
      double wsum = 0;
      got.for_each([&](int r) {
        ++a.elem[r];
        sel[rank_of[r]] = 1;
        wsum += w[rank_of[r]];
      });
      util[(size_t)i] = wsum;
      long long run = 0;
      for (int k = 1; k <= n; ++k) {
        run += sel[k - 1];
        a.curve[k] += run;
        a.curve_sq[k] += run * run;
      }
      long long ic = (got & opt).size();
      a.inter += ic;
      a.inter_sq += ic * ic;
    }
  };
  if (width == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < width; ++j) pool.emplace_back(worker, j);
    for (auto& th : pool) th.join();
  }
  for (int j = 1; j < width; ++j) {  // integer merges, order-free
    for (int r = 0; r < m.id_space(); ++r) accs[0].elem[r] += accs[j].elem[r];
    for (int k = 1; k <= n; ++k) {
      accs[0].curve[k] += accs[j].curve[k];
      accs[0].curve_sq[k] += accs[j].curve_sq[k];
    }
    accs[0].inter += accs[j].inter;
    accs[0].inter_sq += accs[j].inter_sq;
  }
  const Acc& a = accs[0];
  double tt = (double)t_count;

  CompetitivenessReport rep;
  rep.instance_id = plan.instance_id;
  rep.family = plan.family;
  rep.engine = eng.name();
  rep.n = n;
  rep.rank = rank(*m.matroid, m.ground());
  rep.param = plan.param;
  rep.trials = t_count;
  rep.seed = plan.master_seed;
  rep.opt = opt_sorted;
  for (int e : opt_sorted) rep.opt_frequency.push_back((double)a.elem[e] / tt);
  rep.ordinal_curve.resize(n);
  rep.opt_curve.resize(n);
  int run_opt = 0;
  for (int k = 1; k <= n; ++k) {
    rep.ordinal_curve[k - 1] = (double)a.curve[k] / tt;
    run_opt += opt.contains(by_value[k - 1]);
    rep.opt_curve[k - 1] = run_opt;
  }

  // utility: sequential pass in trial order keeps aggregates width-independent
  double util_sd = 0;
  double util_mean = mean_sd(util, &util_sd);
  long long util_hits = (long long)std::count_if(util.begin(), util.end(),
                                                 [](double x) { return x > 0; });
  rep.utility =
      ratio_stat(opt_weight, util_mean, util_sd / std::sqrt(tt), util_hits, t_count);

  // intersection
  double inter_mean = (double)a.inter / tt;
  double inter_var =
      t_count > 1 ? ((double)a.inter_sq - tt * inter_mean * inter_mean) / (tt - 1) : 0.0;
  rep.intersection =
      ratio_stat((double)opt_sorted.size(), inter_mean,
                 std::sqrt(std::max(0.0, inter_var) / tt), a.inter, t_count);

  // ordinal: binding k maximizes |OPT cap top-k| / E|ALG cap top-k|
  int k_star = -1;
  double worst = 0;
  for (int k = 1; k <= n; ++k) {
    if (rep.opt_curve[k - 1] == 0) continue;
    double mean_k = rep.ordinal_curve[k - 1];
    double ratio = mean_k > 0 ? rep.opt_curve[k - 1] / mean_k : kInf;
    if (k_star < 0 || ratio > worst) {
      worst = ratio;
      k_star = k;
    }
  }
  if (k_star < 0) {
    rep.ordinal.trials = t_count;
    rep.ordinal.estimate = 1;  // optimum is empty, everything is vacuous
    rep.warnings.push_back("optimum is empty: ratios are vacuous");
  } else {
    double mean_k = rep.ordinal_curve[k_star - 1];
    double var_k =
        t_count > 1
            ? ((double)a.curve_sq[k_star] - tt * mean_k * mean_k) / (tt - 1)
            : 0.0;
    rep.ordinal = ratio_stat((double)rep.opt_curve[k_star - 1], mean_k,
                             std::sqrt(std::max(0.0, var_k) / tt), a.curve[k_star], t_count);
  }

  // probability: reciprocal of the rarest optimum element
  if (!opt_sorted.empty()) {
    long long min_count = a.elem[opt_sorted[0]];
    for (int e : opt_sorted) min_count = std::min(min_count, a.elem[e]);
    double f = (double)min_count / tt;
    rep.probability = ratio_stat(1.0, f, std::sqrt(std::max(f * (1 - f), 0.0) / tt),
                                 min_count, t_count);
  } else {
    rep.probability.trials = t_count;
    rep.probability.estimate = 1;
  }

  const std::pair<MeasureStat*, const char*> slots[] = {{&rep.utility, "utility"},
                                                        {&rep.ordinal, "ordinal"},
                                                        {&rep.probability, "probability"},
                                                        {&rep.intersection, "intersection"}};
  for (auto [s, nm] : slots) {
    auto it = plan.alpha_bounds.find(nm);
    if (it != plan.alpha_bounds.end()) s->bound = it->second;
    if (s->insufficient)
      rep.warnings.push_back(std::string("insufficient trials for the ") + nm + " estimate");
  }
  if (t_count < 2) rep.warnings.push_back("single trial: intervals are degenerate");
  return rep;
}

bool dominance_check(CompetitivenessReport& report) {
  if (report.trials < 2) {
    report.warnings.push_back("dominance check skipped: single trial");
    return true;
  }
  auto leq = [](const MeasureStat& a, const MeasureStat& b) {
    if (std::isinf(b.estimate)) return true;
    if (std::isinf(a.estimate)) return false;
    return a.estimate <= b.estimate + 3 * (a.ci95 + b.ci95) + 1e-9;
  };
  return leq(report.utility, report.probability) &&
         leq(report.ordinal, report.probability) &&
         leq(report.intersection, report.probability) &&
         leq(report.utility, report.ordinal);
}

ExactMeasures exhaustive_run(const OnlineEngine& engine, std::vector<double> weights) {
  const OrderedMatroid& m = engine.ordered();
  int n = m.num_elements();
  if (n > 8) throw std::invalid_argument("exhaustive replay guarded to n <= 8");
  std::vector<int> by_value = m.elements_by_value();
  if (weights.empty()) weights = decreasing_weights(n);
  if ((int)weights.size() != n || !compatible_weights(weights))
    throw std::invalid_argument("weight vector incompatible with the value order");
  std::vector<int> rank_of(m.id_space(), -1);
  for (int k = 0; k < n; ++k) rank_of[by_value[k]] = k;
  ElementSet opt = greedy_opt(m);

  ExactMeasures out;
  out.element_probability.assign(m.id_space(), 0.0);
  out.ordinal_curve.assign(n, 0.0);
  out.opt_curve.assign(n, 0);
  out.opt_size = opt.size();
  int run_opt = 0;
  for (int k = 0; k < n; ++k) {
    run_opt += opt.contains(by_value[k]);
    out.opt_curve[k] = run_opt;
    if (opt.contains(by_value[k])) out.opt_utility += weights[k];
  }

  double perms = 1;
  for (int i = 2; i <= n; ++i) perms *= i;
  std::vector<int> arrival = m.ground().to_vector();
  std::sort(arrival.begin(), arrival.end());
  std::vector<char> sel(n, 0);
  do {
    for (const TrialCase& c : engine.enumerate_cases(arrival)) {
      double pw = c.weight / perms;
      ElementSet got = engine.run(c.trial).selected;
      std::fill(sel.begin(), sel.end(), 0);
      got.for_each([&](int r) {
        out.element_probability[r] += pw;
        sel[rank_of[r]] = 1;
        out.expected_utility += pw * weights[rank_of[r]];
      });
      int run = 0;
      for (int k = 0; k < n; ++k) {
        run += sel[k];
        out.ordinal_curve[k] += pw * run;
      }
      out.expected_intersection += pw * (got & opt).size();
    }
  } while (std::next_permutation(arrival.begin(), arrival.end()));
  return out;
}

}  // namespace msp
